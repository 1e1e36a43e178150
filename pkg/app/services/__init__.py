"""
Application services
"""

