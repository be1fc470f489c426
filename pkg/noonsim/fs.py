"""Filesystem helpers for writing command output.
"""
import os
import tempfile


## wrapper functions

def abspath(path):
    """Wrapper for os.path.abspath which returns the absolute version of a path.
    """
    return os.path.abspath(path)


def basename(path):
    """Wrapper for os.path.basename which returns the final component of a pathname.
    """
    return os.path.basename(path)


def dirname(path):
    """Wrapper for os.path.dirname which returns the directory component of a pathname.
    """
    return os.path.dirname(path)


def isdir(path):
    """Wrapper for os.path.isdir which tests whether a path is a directory.
    """
    return os.path.isdir(path)


def atomic_write(path, text):
    """Writes text to path through a temporary file in the same directory
    followed by a rename, so readers never see a partial file.

    :param path: target file path
    :param text: the complete file content
    """
    path = abspath(path)
    directory = dirname(path)
    if not isdir(directory):
        raise ValueError('Output directory does not exist: %s' % directory)

    fd, temp_path = tempfile.mkstemp(prefix='.%s.' % basename(path),
                                     suffix='.tmp', dir=directory)
    try:
        with os.fdopen(fd, 'w', newline='') as stream:
            stream.write(text)
        os.replace(temp_path, path)
    except BaseException:
        if os.path.exists(temp_path):
            os.unlink(temp_path)
        raise
    return path
