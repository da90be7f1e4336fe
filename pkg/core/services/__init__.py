"""
Domain services: assignment, distortions, encoding, analytic bounds and numerics.
"""
