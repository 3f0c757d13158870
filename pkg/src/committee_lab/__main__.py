import sys

from committee_lab.cli import main

sys.exit(main())
