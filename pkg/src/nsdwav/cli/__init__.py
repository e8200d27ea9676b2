"""Command-line front end"""
from .config import BenchConfig, load_config, parse_config
from .main import cli, main
