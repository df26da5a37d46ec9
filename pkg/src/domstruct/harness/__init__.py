from .corpus import load_source, run_corpus
from .generate import cubic_catalog, random_cubic
from .verify import CLAIMS, RunConfig, verify_graph

__all__ = ["CLAIMS", "RunConfig", "verify_graph", "run_corpus", "load_source", "random_cubic",
           "cubic_catalog"]
