import sys

from lzrr.cli import main

sys.exit(main())
