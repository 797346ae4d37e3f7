import sys

from contextprob.cli import main

sys.exit(main())
