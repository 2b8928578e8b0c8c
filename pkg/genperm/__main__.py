import sys

from genperm.main import main

sys.exit(main())
