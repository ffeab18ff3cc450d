"""
Published reference data for the bundled parameter sets.

Exact BS volatilities and prices are published finite-difference and
Monte-Carlo benchmarks. Error columns are the standardized errors
(sigma_BS - sigma_exact)/alpha published alongside them, including a third-order
BS expansion (BS-C) that is kept as data only.
"""

# name: (f0, sigma0, beta, rho, nu, t)
PARAM_SETS = {
    '1': dict(f0=0.5, sigma0=0.5, beta=0.5, rho=0.0, nu=0.4, t=2.0),
    '2': dict(f0=0.05, sigma0=0.4, beta=0.3, rho=0.0, nu=0.6, t=1.0),
    '3': dict(f0=1.0, sigma0=0.25, beta=0.6, rho=-0.2, nu=0.3, t=20.0),
    # mass-at-zero base sets
    'mass-base': dict(f0=0.1, sigma0=0.2, beta=0.1, rho=-0.5, nu=0.1, t=1.0),
    'survival-base': dict(f0=0.1, sigma0=0.1, beta=0.1, rho=0.0, nu=0.1, t=0.5),
}

# alpha sqrt(T) and nu sqrt(T) as printed
SCALES = {'1': (1.000, 0.566), '2': (3.257, 0.600), '3': (1.118, 1.342)}

TABLE_METHODS = ('bs-a', 'bs-b', 'bs-c', 'cev-a', 'cev-b')

# k, z, errors (bs-a, bs-b, bs-c, cev-a, cev-b), exact BS vol, exact price (original units)
TABLES = {
    '1': [
        (0.868, -0.077, (0.027, 0.027, 0.004, 0.024, 0.024), 0.7419, 0.221383),
        (1.0, 0.0, (0.024, 0.024, 0.003, 0.022, 0.022), 0.7167, 0.193837),
        (1.152, 0.083, (0.021, 0.021, 0.002, 0.019, 0.019), 0.6933, 0.166241),
    ],
    '2': [
        (0.4, -0.125, (1.059, 1.041, -0.636, 0.051, 0.051), 2.9247, 0.0456),
        (0.8, -0.038, (0.586, 0.586, -0.167, 0.051, 0.051), 2.6051, 0.0414),
        (1.0, 0.0, (0.480, 0.480, -0.006, 0.050, 0.050), 2.4962, 0.0394),
        (1.2, 0.036, (0.405, 0.405, 0.129, 0.049, 0.049), 2.4079, 0.0375),
        (1.6, 0.103, (0.308, 0.307, 0.349, 0.047, 0.047), 2.2638, 0.0339),
        (2.0, 0.164, (0.247, 0.246, 0.525, 0.045, 0.045), 2.1505, 0.0306),
    ],
    '3': [
        (0.1, -1.806, (0.710, 0.592, -0.463, 0.597, 0.435), 0.4122, 0.9222),
        (0.4, -0.921, (0.365, 0.298, -0.046, 0.353, 0.278), 0.2973, 0.7082),
        (0.8, -0.256, (0.226, 0.213, -0.117, 0.224, 0.209), 0.2418, 0.4772),
        (1.0, 0.000, (0.195, 0.195, -0.138, 0.194, 0.194), 0.2273, 0.3887),
        (1.2, 0.227, (0.178, 0.184, -0.151, 0.177, 0.183), 0.2181, 0.3182),
        (1.6, 0.621, (0.169, 0.169, -0.159, 0.168, 0.169), 0.2097, 0.2215),
        (2.0, 0.959, (0.174, 0.162, -0.145, 0.175, 0.161), 0.2081, 0.1637),
    ],
}

# Set 3 mass at zero from the zero-strike CEV volatility, and the bound P(0.1)/0.1
MASS_SET3 = {'cev-a': 0.6079, 'cev-b': 0.4955}
MASS_BOUND_SET3 = 0.2220

# survival probability 1 - M_T on the survival base set with one parameter changed
SURVIVAL = [
    (dict(rho=0.0), 0.9430),
    (dict(rho=-0.1), 0.9412),
    (dict(rho=-0.2), 0.9395),
    (dict(rho=-0.3), 0.9378),
    (dict(beta=0.2), 0.9919),
    (dict(beta=0.3), 0.9998),
    (dict(beta=0.4), 1.0000),
]

# first negative-density strike for Set 3, located at two decimals
ARB_BOUNDARY_SET3 = {'bs-b': 0.19, 'cev-b': 0.19, 'bs-c': 0.30}
