import sys
from pathlib import Path

# Add src to path
sys.path.append(str(Path(__file__).parent / 'src'))

from interface.cli import cli_main

if __name__ == "__main__":
    sys.exit(cli_main(sys.argv[1:]))
