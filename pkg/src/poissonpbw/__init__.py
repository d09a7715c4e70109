"""poissonpbw: exact computer algebra for Poisson enveloping algebras.

Builds polynomial Poisson algebras and their enveloping algebras as
normal-form algebras on an ordered basis, computes Kahler-differential
symmetric algebras of quotients as an independent commutative oracle, and
compares bigraded dimensions to certify the induced basis theorem on
singular quotients.
"""

__version__ = "0.1.0"
