"""Interpreter and toolkit for SPARQAL procedures.

SPARQAL extends SPARQL with solution variables (``LET``), do-while loops
and ``QVALUES(var)`` subqueries that inline a variable's current solutions.
"""

__version__ = "0.1.0"
