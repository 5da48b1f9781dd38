"""Exact symbolic tools for Gelfand-Tsetlin modules over twisted q-deformed
orthogonal algebras in ranks 3 and 4, with a numeric backend for general rank."""

__version__ = "0.1.0"
