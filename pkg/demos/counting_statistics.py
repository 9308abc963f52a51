"""Counting statistics: multinomial shot noise and bootstrap error bars.

A finite number of detection events per encoded symbol turns the exact
outcome table into an empirical one; the plug-in mutual information then
scatters around the true value.  The parametric bootstrap quantifies that
scatter, and its standard deviation shrinks like 1/sqrt(shots).
"""

from densecoding import (
    EncodingScheme,
    conditional_probabilities,
    estimate_mi_with_errors,
    mutual_information,
    sample_counts,
)

THREE = EncodingScheme.three_state()


def main():
    table = conditional_probabilities(THREE, 0.5)
    exact = mutual_information(THREE, table)
    print(f"3-state alphabet at visibility 0.5, exact MI = {exact:.6f} bits")
    print()

    counts = sample_counts(table, 1000, seed=42)
    print("one sampled count table (1000 shots per symbol, seed 42):")
    for label, row in zip(counts.inputs, counts.counts):
        print(f"  {label.value:>9}: {list(row)}")
    print()

    print(f"{'shots/symbol':>12} {'MI mean':>10} {'MI std':>9}")
    for n in (250, 1000, 4000, 16000, 64000):
        mean, std = estimate_mi_with_errors(table, THREE, n, trials=400, seed=7)
        print(f"{n:12d} {mean:10.5f} {std:9.5f}")
    print()
    print("each 4x increase in shots halves the error bar; at a few hundred")
    print("coincidences per setting the bars are a few times 0.01 bits.")


if __name__ == "__main__":
    main()
