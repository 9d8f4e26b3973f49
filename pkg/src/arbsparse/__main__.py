import sys

from arbsparse.cli import main

sys.exit(main())
