"""Low-discrepancy point sets over prime bases, with exact verification.

Construction side: digital nets, Niederreiter sequences, rank-1 lattices,
polynomial lattices, Kronecker/Halton/hybrid sequences.  Verification side:
exact minimal t parameters (geometric and dual), exact star discrepancy in
up to three dimensions, P_2 worst-case integration error.  Finite-field
applications: complete mappings and check-digit systems, a kernel-based
polynomial factorizer, inversive congruential generators, and bounded
continued-fraction searches.
"""

__version__ = "0.1.0"
