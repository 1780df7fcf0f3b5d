"""Surface embeddings of bounded-degree graphs.

Euler-genus and orientable-genus drawing pipelines with sound rejection
certificates, reductions to crossing number and planar vertex/edge
deletion, and exhaustive oracles for small instances.
"""

__version__ = "0.1.0"
