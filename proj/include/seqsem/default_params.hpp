#pragma once

#include <string_view>

#include "seqsem/energy_params.hpp"

namespace seqsem {

/// Verbatim copy of params/default.par (a test keeps the two identical).
inline constexpr std::string_view kDefaultParameterText = R"PARAMS(# seqsem nearest-neighbor parameter set, version 1
# Simplified Turner-style values in kcal/mol. See docs/parameter-format.md.
format seqsem-params 1

temperature_kelvin 310.15
multi_alpha 3.4
multi_beta 0.4
multi_gamma 0.0
terminal_au 0.5
loop_extrapolation 1.07856
interior_asymmetry 0.6
interior_asymmetry_max 3.0

# rows: closing pair (i,j); columns: inner pair (i+1,j-1), both read 5'->3' as (left,right)
[stack]
#         AU      CG      GC      GU      UA      UG
AU     -0.90   -2.20   -2.10   -0.60   -1.10   -1.40
CG     -2.10   -3.30   -2.40   -1.40   -2.10   -2.10
GC     -2.40   -3.40   -3.30   -1.50   -2.20   -2.50
GU     -1.30   -2.50   -2.10   -0.50   -1.40    1.30
UA     -1.30   -2.40   -2.10   -1.00   -0.90   -1.30
UG     -1.00   -1.50   -1.40    0.30   -0.60   -0.50

# hairpin initiation by number of unpaired bases k
[hairpin]
3 5.70
4 5.60
5 5.60
6 5.40
7 5.90
8 5.60
9 6.40
10 6.50
11 6.60
12 6.70
13 6.78
14 6.86
15 6.94
16 7.01
17 7.07
18 7.13
19 7.19
20 7.25
21 7.30
22 7.35
23 7.40
24 7.44
25 7.49
26 7.53
27 7.57
28 7.61
29 7.65
30 7.69

# bulge initiation by number of unpaired bases k
[bulge]
1 3.80
2 2.80
3 3.20
4 3.60
5 4.00
6 4.40
7 4.59
8 4.70
9 4.80
10 4.90
11 5.00
12 5.10
13 5.19
14 5.27
15 5.34
16 5.41
17 5.48
18 5.54
19 5.60
20 5.65
21 5.71
22 5.76
23 5.80
24 5.85
25 5.89
26 5.94
27 5.98
28 6.02
29 6.05
30 6.09

# interior-loop initiation by total unpaired bases k1+k2
[interior]
2 0.50
3 1.60
4 1.10
5 2.00
6 2.00
7 2.17
8 2.31
9 2.44
10 2.55
11 2.65
12 2.75
13 2.84
14 2.92
15 2.99
16 3.06
17 3.12
18 3.19
19 3.24
20 3.30
21 3.35
22 3.40
23 3.45
24 3.50
25 3.54
26 3.58
27 3.62
28 3.66
29 3.70
30 3.74

# hairpin terminal mismatch: pair (i,j), first unpaired i+1, then columns for last unpaired j-1 = A C G U
[mismatch_hairpin]
AU A  -1.00  -1.00  -1.00  -1.00
AU C  -0.80  -0.80  -0.80  -0.80
AU G  -1.80  -1.00  -1.80  -1.00
AU U  -0.80  -0.80  -0.80  -1.70
CG A  -1.60  -1.60  -1.60  -1.60
CG C  -1.40  -1.40  -1.40  -1.40
CG G  -2.40  -1.60  -2.40  -1.60
CG U  -1.40  -1.40  -1.40  -2.30
GC A  -1.70  -1.70  -1.70  -1.70
GC C  -1.50  -1.50  -1.50  -1.50
GC G  -2.50  -1.70  -2.50  -1.70
GC U  -1.50  -1.50  -1.50  -2.40
GU A  -0.80  -0.80  -0.80  -0.80
GU C  -0.60  -0.60  -0.60  -0.60
GU G  -1.60  -0.80  -1.60  -0.80
GU U  -0.60  -0.60  -0.60  -1.50
UA A  -1.10  -1.10  -1.10  -1.10
UA C  -0.90  -0.90  -0.90  -0.90
UA G  -1.90  -1.10  -1.90  -1.10
UA U  -0.90  -0.90  -0.90  -1.80
UG A  -0.90  -0.90  -0.90  -0.90
UG C  -0.70  -0.70  -0.70  -0.70
UG G  -1.70  -0.90  -1.70  -0.90
UG U  -0.70  -0.70  -0.70  -1.60

# interior-loop mismatch: pair read from inside the loop, mismatch next to its 5' base, columns for the base next to its 3' base
[mismatch_interior]
AU A   0.70   0.70  -0.10   0.70
AU C   0.70   0.70   0.70   0.70
AU G  -0.40   0.70   0.30   0.70
AU U   0.70   0.70   0.70   0.00
CG A   0.00   0.00  -0.80   0.00
CG C   0.00   0.00   0.00   0.00
CG G  -1.10   0.00  -0.40   0.00
CG U   0.00   0.00   0.00  -0.70
GC A   0.00   0.00  -0.80   0.00
GC C   0.00   0.00   0.00   0.00
GC G  -1.10   0.00  -0.40   0.00
GC U   0.00   0.00   0.00  -0.70
GU A   0.70   0.70  -0.10   0.70
GU C   0.70   0.70   0.70   0.70
GU G  -0.40   0.70   0.30   0.70
GU U   0.70   0.70   0.70   0.00
UA A   0.70   0.70  -0.10   0.70
UA C   0.70   0.70   0.70   0.70
UA G  -0.40   0.70   0.30   0.70
UA U   0.70   0.70   0.70   0.00
UG A   0.70   0.70  -0.10   0.70
UG C   0.70   0.70   0.70   0.70
UG G  -0.40   0.70   0.30   0.70
UG U   0.70   0.70   0.70   0.00

# sequence-specific bonus for hairpins with 3 or 4 unpaired bases: closing base, loop, closing base
[special_hairpin]
GGGGAC -3.00
GGUGAC -3.00
CGAAAG -3.00
GGAGAC -3.00
CGCAAG -3.00
GGAAAC -3.00
CGGAAG -3.00
CUUCGG -3.00
CGUGAG -3.00
CGAAGG -2.50
CUACGG -2.50
GGCAAC -2.50
CGCGAG -2.50
UGAGAG -2.50
CGAGAG -2.00
AGAAAU -2.00
CGUAAG -2.00
CUAACG -2.00
UGAAAG -2.00
GGAAGC -1.50
GGGAAC -1.50
UGAAAA -1.50
AGCAAU -1.50
AGUAAU -1.50
CGGGAG -1.50
AGUGAU -1.50
GGCGAC -1.50
GGGAGC -1.50
GUGAAC -1.50
UGGAAA -1.50
)PARAMS";

inline const EnergyParams& default_energy_params() {
    static const EnergyParams params = parse_energy_params(kDefaultParameterText);
    return params;
}

}  // namespace seqsem
