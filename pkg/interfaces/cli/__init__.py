"""
CLI commands for the Point Pattern Rate-Distortion Toolkit.
"""
