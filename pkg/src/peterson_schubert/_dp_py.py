"""Pure-Python subword dynamic program; reference and fallback for ``_dp``."""


def billey_dp(trans, rank, word, heights, nstates, target):
    """Weighted count of subwords of ``word`` spelling a reduced word of the target state.

    ``trans[s * rank + b]`` is the state reached from ``s`` by appending letter
    ``b`` (or -1).  States are numbered by increasing length with 0 the
    identity, so every transition goes to a larger index and sweeping states
    downward updates in place without double counting.
    """
    edges = []
    for b in range(rank):
        pairs = []
        for s in range(nstates - 1, -1, -1):
            t = trans[s * rank + b]
            if t >= 0:
                pairs.append((s, t))
        edges.append(pairs)
    dp = [0] * nstates
    dp[0] = 1
    for b, h in zip(word, heights):
        for s, t in edges[b]:
            x = dp[s]
            if x:
                dp[t] += x * h
    return dp[target]
