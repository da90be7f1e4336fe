"""
Interfaces for the Point Pattern Rate-Distortion Toolkit.
Thin click entry points over the use cases.
"""
