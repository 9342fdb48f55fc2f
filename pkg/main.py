#!/usr/bin/env python3
"""
CHW Classifier - Main Entry Point

Classify fundamental groups of complex Hantzsche-Wendt manifolds of odd dimension.
"""

from src.cli.commands import cli

if __name__ == '__main__':
    cli()
