"""
Value types of the tessellation, coordinates and maps
"""
