import sys

from noonflow.runner.cli import main

sys.exit(main())
