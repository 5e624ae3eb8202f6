"""Process-pool partitioning of guess spaces.

Callers sort the merged results, so the partitioning never shows in output.
"""

from concurrent.futures import ProcessPoolExecutor


def map_chunks(fn, p, atoms, guesses, workers):
    size = max(1, -(-len(guesses) // (workers * 4)))
    chunks = [guesses[i:i + size] for i in range(0, len(guesses), size)]
    out = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(fn, [p] * len(chunks), [atoms] * len(chunks), chunks):
            out.extend(part)
    return out
