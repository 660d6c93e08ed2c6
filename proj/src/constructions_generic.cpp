#include <algorithm>
#include <bit>
#include <stdexcept>

#include "canimm/constructions.hpp"

namespace canimm {

StepBudget pump_budget(std::uint64_t length) { return kPumpStepsPerPosition * (length + 1); }

FiniteSet pumped_domain(const ProgramCode& e, const OracleString& rho) {
  return machine::we_window(e, rho.size(), pump_budget(rho.size()), &rho);
}

OracleString length_lex_string(std::uint64_t i) {
  // Binary numeral of i + 1 without its leading 1.
  const std::uint64_t v = i + 1;
  const unsigned width = 63 - std::countl_zero(v);
  std::string bits(width, '0');
  for (unsigned k = 0; k < width; ++k) {
    if ((v >> (width - 1 - k)) & 1u) bits[k] = '1';
  }
  return OracleString(bits);
}

PumpResult pump_enumeration(const OracleString& sigma, const ProgramCode& e, std::uint64_t target,
                            std::uint64_t candidate_limit) {
  PumpResult out;
  Evaluator ev;
  for (std::uint64_t k = 0; k < candidate_limit; ++k) {
    const OracleString rho = sigma + length_lex_string(k);
    ++out.examined;
    const auto w = machine::we_window(e, rho.size(), pump_budget(rho.size()), &rho, &ev);
    out.best = std::max<std::uint64_t>(out.best, w.size());
    if (w.size() > target) {
      out.rho = rho;
      return out;
    }
  }
  return out;
}

WitnessTable build_2generic_witness(const OracleString& sigma, const ProgramCode& e,
                                    const Tree& f, std::uint64_t i_max, std::uint64_t n_max,
                                    std::uint64_t candidate_limit) {
  machine::require_total_tier(f, "witness size bound");
  WitnessTable out;
  std::vector<std::pair<std::uint64_t, FiniteSet>> table;
  for (std::uint64_t i = 0; i <= i_max; ++i) {
    const OracleString tau = sigma + length_lex_string(i);
    for (std::uint64_t n = 0; n <= n_max; ++n) {
      WitnessEntry entry;
      entry.i = i;
      entry.n = n;
      entry.index = 2 * pair(i, n);
      const auto target = to_u64(machine::eval_total(f, {Natural(entry.index)}));
      const auto pumped = pump_enumeration(tau, e, target, candidate_limit);
      entry.examined = pumped.examined;
      if (pumped.rho) {
        entry.resolved = true;
        entry.rho = *pumped.rho;
        entry.beta = OracleString(std::string_view(entry.rho.str()).substr(tau.size()));
        auto order = machine::enumeration_order(e, entry.rho.size(), pump_budget(entry.rho.size()),
                                                &entry.rho);
        order.resize(target + 1);
        entry.h = FiniteSet::from_elements(std::move(order));
        table.emplace_back(pair(i, n), entry.h);
      }
      out.entries.push_back(std::move(entry));
    }
  }
  out.rule = witness_rule(table_rule(table));
  Registry local;
  out.numbering = local.register_numbering(out.rule, true);
  return out;
}

bool x_n_membership(const OracleString& sigma, const Numbering& d, const Tree& f,
                    std::uint64_t n, std::uint64_t index_bound) {
  Evaluator ev;
  Evaluator fev;
  for (std::uint64_t i = n; i <= index_bound; ++i) {
    const FiniteSet v = d.at(i, &ev);
    const bool inside = std::all_of(v.elements().begin(), v.elements().end(), [&](std::uint64_t x) {
      return x < sigma.size() && sigma.bit(x);
    });
    if (inside && v.size() > machine::eval_total(f, {Natural(i)}, &fev)) return true;
  }
  return false;
}

}  // namespace canimm
