"""
kbip: Acyclic edge-colorings of complete bipartite graphs
Version: 0.1.0
"""

__version__ = '0.1.0'
__author__ = 'Jakob Wimmer'
