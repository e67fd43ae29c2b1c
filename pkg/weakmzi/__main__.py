import sys

from weakmzi.cli import main

sys.exit(main())
