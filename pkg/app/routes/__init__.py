"""
Command blueprints
"""
