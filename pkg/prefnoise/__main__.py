import sys

from prefnoise.cli import main

sys.exit(main())
