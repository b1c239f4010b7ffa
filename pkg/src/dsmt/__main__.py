import sys

from dsmt.cli import main

sys.exit(main())
