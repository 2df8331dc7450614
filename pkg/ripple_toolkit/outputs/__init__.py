# -*- coding: utf-8 -*-
from .output_manager import ResultWriter, build_envelope, write_rows_csv

__all__ = ["ResultWriter", "build_envelope", "write_rows_csv"]
