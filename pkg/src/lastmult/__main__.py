import sys

from lastmult.cli import main

sys.exit(main())
