import sys

from skewmon.cli import main

sys.exit(main())
