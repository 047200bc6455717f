import sys

from cli.commands import main

if __name__ == "__main__":
    # Run the command line and exit with its status
    sys.exit(main())
