"""Maximum matching in general graphs by depth-first trunk search."""

from .graph_io import Graph, Matching, parse_dimacs, write_dimacs
from .matcher import MatcherConfig, MatchResult, augment, maximum_matching
from .trunk_search import search

__all__ = ["Graph", "Matching", "MatcherConfig", "MatchResult", "augment",
           "maximum_matching", "parse_dimacs", "search", "write_dimacs"]
