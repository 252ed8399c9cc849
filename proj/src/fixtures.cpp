#include <stdexcept>

#include "grss/estimation.hpp"

namespace grss {

namespace {

struct Obs {
    double x;
    int z;
};

// m=3, r=5 benchmark datasets; rows are cycles, columns are ranks 1..3.
constexpr Obs kNormal[5][3] = {
    {{4.4474, 1}, {4.6752, 0}, {3.5313, 2}},
    {{1.6178, 1}, {5.4656, 2}, {5.9896, 2}},
    {{-1.0743, 0}, {8.460, 2}, {5.2522, 0}},
    {{4.6148, 2}, {5.9695, 2}, {5.680, 3}},
    {{-0.0245, 0}, {6.4033, 3}, {5.9212, 2}},
};

constexpr Obs kLogistic[5][3] = {
    {{1.3716, 2}, {5.9190, 1}, {3.4550, 1}},
    {{-0.164, 1}, {9.4621, 3}, {4.8668, 1}},
    {{-2.022, 0}, {3.7473, 0}, {8.2979, 1}},
    {{9.4343, 3}, {6.3316, 2}, {10.9176, 3}},
    {{2.8089, 0}, {-0.688, 0}, {7.9176, 2}},
};

constexpr Obs kLaplace[5][3] = {
    {{1.6319, 0}, {8.7022, 3}, {9.9915, 3}},
    {{6.5161, 2}, {5.0073, 0}, {15.141, 2}},
    {{-6.0655, 0}, {5.2041, 2}, {10.064, 3}},
    {{-3.7891, 1}, {8.8777, 2}, {5.9374, 2}},
    {{0.1522, 1}, {3.3671, 2}, {9.0545, 3}},
};

constexpr Obs kExponential[5][3] = {
    {{6.2509, 2}, {7.1096, 2}, {9.3171, 2}},
    {{5.519, 1}, {8.2284, 3}, {6.250, 0}},
    {{7.4602, 1}, {7.4863, 3}, {11.0521, 3}},
    {{5.2761, 0}, {5.3311, 0}, {19.0304, 3}},
    {{6.2796, 1}, {5.6520, 1}, {14.0542, 3}},
};

GrssDataset build(const Obs table[5][3]) {
    GrssDataset data;
    data.m = 3;
    data.r = 5;
    data.has_z = true;
    for (int j = 1; j <= 5; ++j)
        for (int i = 1; i <= 3; ++i)
            data.observations.push_back({table[j - 1][i - 1].x, table[j - 1][i - 1].z, i, j});
    data.validate();
    return data;
}

}  // namespace

GrssDataset load_fixture(Family family) {
    switch (family) {
        case Family::Normal: return build(kNormal);
        case Family::Logistic: return build(kLogistic);
        case Family::Laplace: return build(kLaplace);
        case Family::TwoParamExponential: return build(kExponential);
    }
    throw std::domain_error("load_fixture: unknown fixture");
}

}  // namespace grss
