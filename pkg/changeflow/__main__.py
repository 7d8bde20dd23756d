import sys

from changeflow.main import main

sys.exit(main())
