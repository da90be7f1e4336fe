"""
Adapters for the Point Pattern Rate-Distortion Toolkit.
Contains implementations of port interfaces for samplers, center heuristics and storage.
"""
