"""CSV and JSON emitters for command results.

CSV floats carry 17 significant digits so they read back bit-exact; JSON
relies on the shortest round-trip repr. Both are deterministic.
"""
import csv
import enum
import io
import json

import numpy as np


SCHEMA_VERSION = 1


def format_float(value):
    return '%.17g' % value


def _cell(value):
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    return str(value)


def csv_text(header, rows):
    """Returns a CSV document with a header row.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(value) for value in row])
    return buffer.getvalue()


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in value]
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def json_text(command, record):
    """Returns one JSON object for ``command`` with the schema version.
    """
    document = {'schema_version': SCHEMA_VERSION, 'command': command}
    document.update(_jsonable(record))
    return json.dumps(document, indent=2, sort_keys=True, allow_nan=False) \
        + '\n'
