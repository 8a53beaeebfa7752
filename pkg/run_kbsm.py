#!/usr/bin/env python3
"""
Launcher script for the KBSM calculator.

KBSM 计算器启动脚本
"""

import os
import sys

# Add the current directory to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from kbsm_calc.cli.app import main

if __name__ == "__main__":
    sys.exit(main())
