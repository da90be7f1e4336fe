"""
Core module for the Point Pattern Rate-Distortion Toolkit.
Contains entities, ports, services and use cases; nothing here imports an adapter.
"""
