"""
Domain entities: point patterns, codebooks, RD points, bound parameters and sources.
"""
