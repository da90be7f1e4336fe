"""
Center point pattern heuristics (MDAP solvers) for LBG training.
"""
