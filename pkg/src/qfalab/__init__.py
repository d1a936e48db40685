"""Exact-arithmetic laboratory for quantum finite automata built from
rational quaternions: the MMPCP reduction, injective packing polynomials
and bounded verification suites."""

__version__ = "0.1.0"
