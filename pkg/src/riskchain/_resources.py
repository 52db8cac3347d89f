import json
from importlib import resources

from .errors import ConfigError


def bundled_path(*parts):
    return resources.files("riskchain").joinpath(*parts)


def load_json(path):
    """Load a JSON config file, raising ConfigError on I/O or syntax problems."""
    try:
        if hasattr(path, "read_text") and not isinstance(path, str):
            text = path.read_text(encoding="utf-8")
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        return json.loads(text)
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc


def load_bundled(*parts):
    return load_json(bundled_path(*parts))
