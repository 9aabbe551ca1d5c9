import sys

from oddgirth.cli import main

sys.exit(main())
