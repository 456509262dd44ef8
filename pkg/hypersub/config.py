"""
Reading of the user configuration file.

The configuration file is an INI file named `.hypersubrc` in the home
directory (`hypersub.conf` on Windows). A template holding the defaults
is written the first time it is looked for and not found.

Example
-------
A configuration file overriding the results store location and the
default subsampling multiplier::

    [store]
    path = /data/hypersub/results.sqlite

    [subsampling]
    C = 1.4
    subsamples = 1000
"""
import os
import sys
import warnings
import configparser


DEFAULTS = {
    'store': {
        'path': os.path.join('~', '.hypersub.sqlite'),
    },
    'subsampling': {
        'C': '1.5',
        'subsamples': '1000',
        'exponent': '1.1',
    },
    'calibration': {
        'm': '1000000',
        'seed': '20240101',
    },
}


def _get_config_filename():
    """
    Yields the platform-specific configuration filename
    """
    return 'hypersub.conf' if sys.platform.startswith('win') else '.hypersubrc'


def _get_config_path():
    """
    Yields the path to configuration file
    """
    return os.path.join(os.path.expanduser('~'))


def _get_config_file():
    return os.path.join(_get_config_path(),
                        _get_config_filename())


def _write_template(conf_file):
    parser = configparser.ConfigParser()
    parser.optionxform = str
    parser.read_dict(DEFAULTS)
    try:
        with open(conf_file, 'w') as f:
            parser.write(f)
    except OSError:
        # Read-only home directories still get the defaults.
        pass


def load_config():
    """
    Load the configuration file, falling back to `DEFAULTS` for every
    missing section or option.

    Returns
    -------
    parser: configparser.ConfigParser
        Parser holding the defaults overlaid with the file contents.
    """
    conf_file = _get_config_file()

    parser = configparser.ConfigParser()
    parser.optionxform = str
    parser.read_dict(DEFAULTS)

    if os.path.exists(conf_file):
        parser.read(conf_file)
    else:
        msg = ("Could not find the configuration file {}. "
               "A template config file with the defaults will be "
               "written there.")
        warnings.warn(msg.format(conf_file))
        _write_template(conf_file)

    return parser


def get(section, option):
    """Return a configuration value as a string."""
    return load_config().get(section, option)


def getfloat(section, option):
    """Return a configuration value as a float."""
    value = get(section, option)
    try:
        return float(value)
    except ValueError:
        msg = "Configuration option `{}.{}` should be a number, got `{}`."
        raise ValueError(msg.format(section, option, value))


def getint(section, option):
    """Return a configuration value as an integer."""
    value = get(section, option)
    try:
        return int(value)
    except ValueError:
        msg = "Configuration option `{}.{}` should be an integer, got `{}`."
        raise ValueError(msg.format(section, option, value))


def store_path():
    """The expanded path of the sqlite results store."""
    return os.path.expanduser(get('store', 'path'))
