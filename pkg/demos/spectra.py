"""Sector energy bands E_k^n across the Brillouin zone.

Shows the near-flat band at very small hopping (the Mott regime, where
the band minimum is washed out) against the dispersive band at t/g = 0.2,
and how small a dent the Kerr nonlinearity makes in the spectrum itself.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from kerrchain import ModelParams, spectrum_over_k

fig, axes = plt.subplots(1, 2, figsize=(9, 3.5), sharex=True)

for ax, gamma in zip(axes, (0.0, 0.01)):
    for t, style in ((0.001, "--"), (0.2, "-")):
        p = ModelParams(t=t, gamma=gamma)
        spec = spectrum_over_k(1, p, k_samples=201)
        ax.plot(spec[:, 0] / p.L, spec[:, 1], style, label=f"t/g = {t}")
    ax.set_title(f"gamma/g = {gamma}")
    ax.set_xlabel("k / L")
axes[0].set_ylabel("E / g")
axes[0].legend()

fig.tight_layout()
fig.savefig("spectra.png", dpi=150)
print("wrote spectra.png")

# the Kerr term barely moves the band: compare the minima directly
for gamma in (0.0, 0.01):
    spec = spectrum_over_k(1, ModelParams(t=0.2, gamma=gamma))
    print(f"gamma/g = {gamma}: band minimum E/g = {spec[:, 1].min():.6f}")
