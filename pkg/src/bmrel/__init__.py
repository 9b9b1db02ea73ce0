"""(alpha, beta)-BM relations and groups.

Enumerates and counts square complexes whose links are complete bipartite
graphs, builds the (1, beta) levels recursively, and checks normal forms,
isomorphism certificates and abelianizations of the resulting groups.
"""

__version__ = "0.1.0"
