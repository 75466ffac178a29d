"""quatrace.

Exact expected values of Re-trace expressions in products of independent
symplectically invariant quaternionic random matrices, computed through the
premap (topological) expansion and cross-checked against brute-force Wick,
Weingarten-projection and Monte Carlo oracles.

Features:
- Signed permutations, pairings and premaps with exact cycle bookkeeping
- Bracket-diagram planarity tests and canonical bracketization
- Symbolic and fixed-N symplectic Weingarten tables
- Ginibre, GSE, Wishart, Haar and empirical cumulant weights
- Expression DSL and a JSON-emitting command line
"""

__version__ = "0.3.0"
__license__ = "MIT"

__status__ = "Alpha"
