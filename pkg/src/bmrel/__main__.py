import sys

from bmrel.cli import main

sys.exit(main())
