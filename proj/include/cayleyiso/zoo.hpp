#pragma once

#include "cayleyiso/group.hpp"

#include <string>
#include <vector>

namespace cayleyiso {

struct ZooInstance {
    std::string name;
    Group group;
    SymmetricSet set;
};

/// The built-in instance zoo: Z, Z^2, Z/4, Z/5, Z/6, Klein four-group,
/// S3 (by multiplication table), F2, C2*C3, lamplighter — each with its
/// standard or documented set.
std::vector<ZooInstance> instance_zoo();

/// Multiplication table of a finite backend, canonical element order
/// (identity first).
std::vector<std::vector<int>> to_table(const Group& g);

Group builtin_klein_four();  // (Z/2)^2 via its XOR table
Group builtin_s3();          // symmetric group on 3 points, via its table

} // namespace cayleyiso
