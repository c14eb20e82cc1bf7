"""Exact character-level computations for small finite reductive groups:
Harish-Chandra and Deligne-Lusztig induction, Grothendieck-Springer traces,
parabolic intertwiners, and the verification suites built on them."""

__version__ = "0.1.0"
