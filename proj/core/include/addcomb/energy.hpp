#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "addcomb/conv.hpp"
#include "addcomb/group.hpp"
#include "addcomb/types.hpp"

namespace addcomb {

// E_k^+(A, B) = sum_x r_{A-B}(x)^k.
Count energy(const GSet& a, const GSet& b, unsigned k);
inline Count additive_energy(const GSet& a) { return energy(a, a, 2); }
inline Count fourth_energy(const GSet& a) { return energy(a, a, 4); }

// T_k(P): solutions of p_1 + ... + p_k = p_{k+1} + ... + p_{2k}; k in {1,2,4,8}.
Count t_k(const GSet& p, unsigned k);

struct EnergyRecord {
  std::string name;
  Count value = 0;
  std::vector<std::string> operands;
  unsigned k = 0;
};

// E_k^+(A) with |A|^k <= E_k^+(A) <= |A|^{k+1} asserted.
EnergyRecord self_energy_record(const GSet& a, unsigned k, const std::string& operand);

// Columns: schema_version,instance_id,name,k,value.
void write_energy_csv(std::ostream& os, const std::string& instance_id, const std::vector<EnergyRecord>& records,
                      bool header = true);

struct IdentityPair {
  Count lhs = 0;
  Count rhs = 0;
  bool holds() const { return lhs == rhs; }
};

// E_4^+(A) against sum_{x,y,z} |A ∩ (A+x) ∩ (A+y) ∩ (A+z)|^2.
// Refuses with BudgetExceeded when |A-A|^3 |A| is over budget.
IdentityPair quad_identity(const GSet& a, const Budget& budget = {});

// E_4^+(A) against sum_{x,w} E^+(A_x, A_w).
IdentityPair lem1_identity(const GSet& a, const Budget& budget = {});

// E^+(A, D) against sum_x r_{A-A}(x) r_{D-D}(x).
IdentityPair cross_energy_identity(const GSet& a, const GSet& d);

}  // namespace addcomb
