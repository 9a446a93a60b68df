"""Reference measurements of the seeded 391-nm forward emission of
strong-field-ionized nitrogen, used for round-trip tests and demonstrations.

Each row is (pressure in mbar, pulse FWHM in ps, peak delay in ps), obtained
from sech^2 reductions of measured temporal profiles. The delay is measured
from the arrival of the pump that creates the medium.
"""

MEASURED_PULSE_WIDTH_DELAY_PS = (
    (6.0, 3.995, 8.614),
    (7.0, 3.508, 7.295),
    (8.0, 2.937, 6.287),
    (10.0, 2.349, 4.613),
    (12.0, 2.001, 3.822),
    (14.0, 1.581, 3.070),
    (16.0, 1.303, 2.701),
    (18.0, 1.082, 2.450),
    (20.0, 1.003, 2.199),
)
