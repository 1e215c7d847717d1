from diffsnr.cli import main
import sys

sys.exit(main())
