"""Exact computational engine for modules over categories of finite sets
with decorated injections: functors (shift, derivative, homology), numeric
invariants (depth, regularity, Hilbert polynomials) and combinatorial
verifiers, all in exact arithmetic."""

__version__ = "0.1.0"
