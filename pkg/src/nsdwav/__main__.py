"""``python -m nsdwav``"""
from nsdwav.cli.main import run

run()
