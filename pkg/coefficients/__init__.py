"""
Coefficient machinery: truncated series, Schwarz and Caratheodory data,
class-member extraction and the coefficient functionals.
"""
