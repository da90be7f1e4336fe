"""
Use cases for the Point Pattern Rate-Distortion Toolkit.
Orchestrate services and injected adapters for the CLI commands.
"""
