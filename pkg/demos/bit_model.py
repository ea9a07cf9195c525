"""The bit-level model: which bits to send and which to force.

Noise wipes out every bit at or below the units place. The external link
carries a few bits and the first controller can zero the low-order ones.
"""
from witsext import semidet

# %% State above the noise: b1 b2 are clean, b3 b4 b5 are noisy
params = semidet.SemidetParams(sigma0_pow=4.0, cap_ext=2, num_bits=5)
quarter = semidet.parse_binary("0.01")
for budget in (quarter / 2, quarter):
    strat = semidet.optimal_strategy(params, budget)
    _, mmse = semidet.semidet_cost(params, strat, budget)
    print(f"input budget {semidet.format_binary(budget)}: error power {semidet.format_binary(mmse)}")
    print(semidet.render(params, strat))

# %% State below the noise: every bit is noisy
params = semidet.SemidetParams(sigma0_pow=0.5, cap_ext=2, num_bits=4)
budget = semidet.parse_binary("0.001")
strat = semidet.optimal_strategy(params, budget)
print(semidet.render(params, strat))

# %% The greedy allocation against exhaustive search
agree = all(
    semidet.optimal_tradeoff(p, 2.0 ** b) == semidet.brute_force_optimal(p, 2.0 ** b)
    for top in range(-3, 4) for cap in range(4) for n in range(1, 8)
    for p in [semidet.SemidetParams(2.0 ** top, cap, n)]
    for b in range(top - n - 1, top + 2)
)
print("matches exhaustive search:", agree)
