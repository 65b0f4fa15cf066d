"""
Exact edgepath systems, candidate surfaces and boundary slopes for
Montesinos and pretzel knots.
"""

__version__ = "0.1.0"
