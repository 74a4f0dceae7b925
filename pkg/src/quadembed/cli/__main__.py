import sys

from quadembed.cli.main import main

sys.exit(main())
