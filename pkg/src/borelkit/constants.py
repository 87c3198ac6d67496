from packaging.version import Version

DOCUMENT_VERSION = Version("1.0")

#### SIZE BOUNDS ####

DEFAULT_DEPTH = 4
DEFAULT_WIDTH = 3
DEFAULT_UNIVERSE_SIZE = 6
DEFAULT_CASES = 200
# every topology on at most this many points is checked by the topology suite
TOPOLOGY_EXHAUSTIVE_POINTS = 5

DEPTH_ENV = "BORELKIT_DEPTH"
WIDTH_ENV = "BORELKIT_WIDTH"
UNIVERSE_ENV = "BORELKIT_UNIVERSE"
CASES_ENV = "BORELKIT_CASES"

#### FOR SERIALIZATION ####

COUNTEREXAMPLE_FILE_NAME = "counterexample_{suite}_{seed}.json"
