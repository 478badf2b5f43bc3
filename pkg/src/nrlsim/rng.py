"""Named, reproducible RNG substreams.

Every random subsystem (placement, roles, link realization, fast fading,
block errors, traffic) draws from its own PCG64 generator seeded by
(seed, drop_index, stream code[, ue]). Streams never depend on the device
profile, so the same drop sees identical channel and traffic realizations
under every configuration of a campaign.
"""

import numpy as np

PLACEMENT = 1
ROLES = 2
LINK = 3
FADING = 4
BLER = 5
TRAFFIC = 6

STREAM_NAMES = {
    "placement": PLACEMENT,
    "roles": ROLES,
    "link": LINK,
    "fading": FADING,
    "bler": BLER,
    "traffic": TRAFFIC,
}


def substream(seed: int, drop_index: int, stream: int, member: int = 0) -> np.random.Generator:
    """Generator for one (drop, subsystem, member) tuple. Pure function of its key."""
    ss = np.random.SeedSequence(entropy=(int(seed), int(drop_index), int(stream), int(member)))
    return np.random.Generator(np.random.PCG64(ss))
