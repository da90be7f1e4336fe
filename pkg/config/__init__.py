"""
Configuration management for the Point Pattern Rate-Distortion Toolkit.
"""
