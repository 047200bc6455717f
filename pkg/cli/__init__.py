"""
Command-line interface: expand, evaluate, certify and sample.
"""
