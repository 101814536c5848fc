import os
import sys

# Corrige sys.path para imports do pacote src/*
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.main import cli

if __name__ == "__main__":
    cli()
