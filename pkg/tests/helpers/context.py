import shutil
import uuid
from pathlib import Path

from borelkit.serialize import save_object

CACHE_DIR = Path(__file__).parent.parent / ".test_cache"


class TestContext:
    """A scratch folder for the documents a test writes; it goes away with the context."""

    def __init__(self):
        self.directory = CACHE_DIR / uuid.uuid4().hex
        self.directory.mkdir(parents=True, exist_ok=True)

    def get_auto_remove_tmp_dir(self) -> Path:
        return self.directory

    def save(self, obj, name: str) -> Path:
        """Write ``obj`` as a document, for commands that read their inputs from files."""
        path = self.directory / name
        save_object(obj, path)
        return path

    def __del__(self):
        shutil.rmtree(self.directory, ignore_errors=True)
