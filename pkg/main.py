"""
Main entry point for the Point Pattern Rate-Distortion Toolkit.
"""

from interfaces.cli.main import cli


def main():
    """Main entry point dispatching to the CLI."""
    cli()


if __name__ == "__main__":
    main()
