"""Time the numba kernels against their numpy fallbacks.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np
import scipy.sparse as sp

from qglab import _kernels as K


def _power_args(n, density, seed):
    rng = np.random.default_rng(seed)
    M = sp.random(n, n, density=density, format="csr", random_state=rng, dtype=np.complex128)
    H = M.conj().T.tocsr()
    x0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return (
        M.data, M.indices.astype(np.int64), M.indptr.astype(np.int64),
        H.data, H.indices.astype(np.int64), H.indptr.astype(np.int64),
        x0, 50,
    )


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    coef = rng.standard_normal(256)
    x = np.linspace(-1.0, 1.0, 200_000)
    pargs = _power_args(20_000, 5e-4, 1)
    cases = [("clenshaw deg255 x 2e5", K._clenshaw_np, "_clenshaw_nb", (coef, x)),
             ("csr power 2e4, 50 iters", K._csr_power_np, "_csr_power_nb", pargs)]
    print(f"numba available: {K.USING_NUMBA}")
    for name, f_np, nb_name, fargs in cases:
        t_np = min(timeit.repeat(lambda: f_np(*fargs), number=1, repeat=args.repeat))
        line = f"{name:28s} numpy {t_np * 1e3:9.2f} ms"
        f_nb = getattr(K, nb_name, None)
        if f_nb is not None:
            f_nb(*fargs)  # compile
            t_nb = min(timeit.repeat(lambda: f_nb(*fargs), number=1, repeat=args.repeat))
            r_np, r_nb = f_np(*fargs), f_nb(*fargs)
            diff = np.max(np.abs(np.asarray(r_np[0]) - np.asarray(r_nb[0]))) if isinstance(r_np, tuple) \
                else np.max(np.abs(r_np - r_nb))
            line += f"  numba {t_nb * 1e3:9.2f} ms  speedup {t_np / t_nb:6.1f}x  maxdiff {diff:.1e}"
        print(line)


if __name__ == "__main__":
    main()
