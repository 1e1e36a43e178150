"""
Validation, errors and file helpers
"""
