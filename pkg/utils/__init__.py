"""
Small shared helpers: error types and exact rational formatting.
"""
