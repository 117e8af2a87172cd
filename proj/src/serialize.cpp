#include "bogofock/serialize.hpp"

#include <stdexcept>

namespace bogofock {

Json to_json(const FockVector& psi) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["type"] = "fock_vector";
  doc["modes"] = psi.modes;
  doc["nmax"] = psi.nmax;
  doc["lossy"] = psi.lossy;
  Json sectors = Json::array();
  for (int n = 0; n <= psi.nmax; ++n) {
    const Vector& coeffs = psi.sector(n);
    if (coeffs.cwiseAbs().maxCoeff() == 0.0) continue;
    const auto& basis = OccupationBasis::get(psi.modes, n);
    Json entries = Json::array();
    for (Eigen::Index r = 0; r < coeffs.size(); ++r) {
      if (coeffs(r) == Complex(0.0, 0.0)) continue;
      entries.push_back(Json::array({basis.state(r), coeffs(r).real(), coeffs(r).imag()}));
    }
    sectors.push_back(Json{{"N", n}, {"entries", entries}});
  }
  doc["sectors"] = sectors;
  return doc;
}

FockVector fock_from_json(const Json& doc) {
  if (doc.value("type", "") != "fock_vector") throw std::invalid_argument("fock_from_json: wrong record type");
  FockVector out = FockVector::zero(doc.at("modes").get<int>(), doc.at("nmax").get<int>());
  out.lossy = doc.value("lossy", false);
  for (const auto& sector : doc.at("sectors")) {
    const int n = sector.at("N").get<int>();
    if (n < 0 || n > out.nmax) throw std::invalid_argument("fock_from_json: sector out of range");
    const auto& basis = OccupationBasis::get(out.modes, n);
    for (const auto& entry : sector.at("entries")) {
      const auto occ = entry.at(0).get<std::vector<int>>();
      out.sector(n)(basis.rank(occ)) = Complex(entry.at(1).get<double>(), entry.at(2).get<double>());
    }
  }
  return out;
}

Json to_json(const ExtendedVector& v) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["type"] = "extended_vector";
  doc["modes"] = v.modes;
  doc["bound"] = v.bound;
  doc["lossy"] = v.lossy;
  Json entries = Json::array();
  for (const auto& [key, entry] : v.entries) {
    Json values = Json::array();
    for (Eigen::Index i = 0; i < entry.values.size(); ++i) {
      values.push_back(entry.values(i).real());
      values.push_back(entry.values(i).imag());
    }
    entries.push_back(Json{{"N", key.first}, {"L", key.second}, {"summable", entry.summable}, {"values", values}});
  }
  doc["entries"] = entries;
  return doc;
}

ExtendedVector extended_from_json(const Json& doc) {
  if (doc.value("type", "") != "extended_vector")
    throw std::invalid_argument("extended_from_json: wrong record type");
  ExtendedVector out = ExtendedVector::zero(doc.at("modes").get<int>(), doc.at("bound").get<int>());
  out.lossy = doc.value("lossy", false);
  for (const auto& entry : doc.at("entries")) {
    const int n = entry.at("N").get<int>();
    const int l = entry.at("L").get<int>();
    if (n < 0 || l < 0 || n + l > out.bound) throw std::invalid_argument("extended_from_json: entry out of range");
    const auto raw = entry.at("values").get<std::vector<double>>();
    const Eigen::Index size = pointwise_size(out.modes, n + l);
    if (static_cast<Eigen::Index>(raw.size()) != 2 * size)
      throw std::invalid_argument("extended_from_json: value array has the wrong length");
    Vector values(size);
    for (Eigen::Index i = 0; i < size; ++i)
      values(i) = Complex(raw[static_cast<std::size_t>(2 * i)], raw[static_cast<std::size_t>(2 * i + 1)]);
    out.entries.emplace(std::make_pair(n, l),
                        ExtendedVector::Entry{std::move(values), entry.value("summable", true)});
  }
  return out;
}

}  // namespace bogofock
