"""Version information for qinfo."""

__version__ = "0.1.0"
__author__ = "qinfo developers"
__description__ = "Coherent entropy, conservation ledgers and time correlations for multipartite quantum states"
