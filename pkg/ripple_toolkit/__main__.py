# -*- coding: utf-8 -*-
"""
Ripple Toolkit - 命令列入口點

使用方法：
    python -m ripple_toolkit --help
    python -m ripple_toolkit count --graph g.txt --k 4
"""

import sys

from ripple_toolkit.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
