import sys

from argew.cli import main

sys.exit(main())
