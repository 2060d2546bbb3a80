"""Content-addressed JSON result cache for the CLI."""
import hashlib
import json
import os
import sys


def config_key(config):
    """Stable hash of a JSON-serializable config mapping."""
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"),
                      default=str)
    return hashlib.sha256(blob.encode()).hexdigest()


class ResultCache:
    """Directory of <key>.json records; corrupt entries are recomputed."""

    def __init__(self, directory):
        self.directory = directory
        if directory:
            os.makedirs(directory, exist_ok=True)

    @classmethod
    def from_environment(cls, flag_dir=None, disabled=False):
        if disabled:
            return cls(None)
        return cls(flag_dir or os.environ.get("TRIONLAB_CACHE"))

    def _path(self, key):
        return os.path.join(self.directory, key + ".json")

    def get(self, key):
        if not self.directory:
            return None
        path = self._path(key)
        if not os.path.exists(path):
            return None
        try:
            with open(path) as fh:
                record = json.load(fh)
            if record.get("key") != key:
                raise ValueError("key mismatch")
            return record["payload"]
        except (ValueError, KeyError, OSError) as exc:
            print(f"warning: ignoring corrupt cache entry {path}: {exc}",
                  file=sys.stderr)
            return None

    def put(self, key, payload):
        if not self.directory:
            return
        tmp = self._path(key) + ".tmp"
        with open(tmp, "w") as fh:
            json.dump({"key": key, "payload": payload}, fh)
        os.replace(tmp, self._path(key))
