"""
Pydantic run-configuration schemas for the CLI commands.
"""
