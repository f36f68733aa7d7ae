import os
import math
import hashlib


def format_number(x):
    """
    Format a value for CSV output with full round-trip precision.

    >>> format_number(0.1)
    '0.10000000000000001'
    >>> format_number(2)
    '2'
    >>> format_number(None)
    ''
    >>> format_number('shock')
    'shock'
    >>> format_number(True)
    '1'
    """
    if x is None:
        return ''
    if isinstance(x, bool):
        return '1' if x else '0'
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        if math.isnan(x):
            return 'nan'
        return '%.17g' % x
    return str(x)


def eta_label(eta):
    """
    >>> eta_label(10.0)
    '10'
    >>> eta_label(0.5)
    '0.5'
    """
    return '%g' % eta


def parse_eta_list(values):
    """
    Parse and sort --eta values, rejecting duplicates.

    >>> parse_eta_list(['30', '10'])
    [10.0, 30.0]
    >>> parse_eta_list(['10', '10.0'])
    Traceback (most recent call last):
        ...
    ValueError: duplicate eta value: 10.0
    >>> parse_eta_list(['-1'])
    Traceback (most recent call last):
        ...
    ValueError: eta must be positive: -1.0
    """
    etas = []
    for v in values:
        eta = float(v)
        if not eta > 0:
            raise ValueError("eta must be positive: %r" % eta)
        if eta in etas:
            raise ValueError("duplicate eta value: %r" % eta)
        etas.append(eta)
    return sorted(etas)


def bytes_sha256(data):
    """
    >>> bytes_sha256(b'')[:16]
    'e3b0c44298fc1c14'
    """
    return hashlib.sha256(data).hexdigest()


def make_output_dir(path):
    if not os.path.isdir(path):
        os.makedirs(path)
    return os.path.abspath(path)
