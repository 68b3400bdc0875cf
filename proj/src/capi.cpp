#include "glattice/glattice.h"

#include <cstdlib>
#include <cstring>
#include <new>

#include "cohom.hpp"
#include "json.hpp"
#include "checks.hpp"
#include "specs.hpp"

struct glat_group {
  glattice::GroupPtr g;
};

struct glat_lattice {
  glattice::GLattice m;
};

namespace {

using glattice::Error;
using json = nlohmann::ordered_json;

thread_local std::string last_error;

glat_status status_of(Error::Kind k) {
  switch (k) {
    case Error::Kind::invalid_parameter: return GLAT_ERR_INVALID_ARGUMENT;
    case Error::Kind::precondition: return GLAT_ERR_PRECONDITION;
    case Error::Kind::mismatch: return GLAT_ERR_MISMATCH;
    case Error::Kind::parse: return GLAT_ERR_PARSE;
    case Error::Kind::internal: return GLAT_ERR_INTERNAL;
  }
  return GLAT_ERR_INTERNAL;
}

template <class F>
glat_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return GLAT_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return GLAT_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& e) {
    last_error = e.what();
    return GLAT_ERR_INVALID_ARGUMENT;
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return GLAT_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GLAT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GLAT_ERR_INTERNAL;
  }
}

glat_status null_arg(const char* what) {
  last_error = std::string("null argument: ") + what;
  return GLAT_ERR_NULL_ARGUMENT;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

json integer_json(const glattice::Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json matrix_json(const glattice::IntMatrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(integer_json(a(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json subgroup_json(const glattice::Subgroup& h) {
  json els = json::array();
  for (int x : h.elements()) els.push_back(h.parent()->name(x));
  return json{{"order", h.order()}, {"elements", els}};
}

json tate_json(const glattice::TateGroup& t) {
  json f = json::array();
  for (const auto& x : t.invariant_factors) f.push_back(integer_json(x));
  return f;
}

json verdict_json(const glattice::SubgroupVerdict& v) {
  json j{{"holds", v.holds}};
  if (v.failing) {
    j["failing_subgroup"] = subgroup_json(*v.failing);
    j["obstruction"] = v.obstruction.to_string();
  }
  return j;
}

json gset_json(const glattice::GSet& x) {
  json orbits = json::array();
  for (const auto& o : x.orbits()) orbits.push_back(json{{"size", o.size()}, {"stabilizer", subgroup_json(x.stabilizer(o.front()))}});
  return json{{"points", x.size()}, {"orbits", orbits}};
}

std::map<std::string, std::string> params_from_json(const char* text) {
  std::map<std::string, std::string> out;
  if (!text || !*text) return out;
  const json j = json::parse(text);
  if (!j.is_object()) throw Error(Error::Kind::parse, "check parameters must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.value().is_string()) out[it.key()] = it.value().get<std::string>();
    else if (it.value().is_number_integer()) out[it.key()] = std::to_string(it.value().get<long>());
    else throw Error(Error::Kind::parse, "check parameter '" + it.key() + "' must be a string or integer");
  }
  return out;
}

}  // namespace

extern "C" {

const char* glat_version(void) { return "1.0.0"; }

const char* glat_last_error(void) { return last_error.c_str(); }

const char* glat_status_name(glat_status status) {
  switch (status) {
    case GLAT_OK: return "ok";
    case GLAT_ERR_NULL_ARGUMENT: return "null_argument";
    case GLAT_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case GLAT_ERR_PARSE: return "parse";
    case GLAT_ERR_PRECONDITION: return "precondition";
    case GLAT_ERR_MISMATCH: return "mismatch";
    case GLAT_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void glat_string_free(char* s) { std::free(s); }

glat_status glat_group_parse(const char* spec, glat_group** out) {
  if (!spec) return null_arg("spec");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new glat_group{glattice::parse_group(spec)}; });
}

void glat_group_free(glat_group* g) { delete g; }

glat_status glat_group_order(const glat_group* g, int* out) {
  if (!g) return null_arg("group");
  if (!out) return null_arg("out");
  *out = g->g->order();
  return GLAT_OK;
}

glat_status glat_group_info_json(const glat_group* g, char** out) {
  if (!g) return null_arg("group");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto& grp = g->g;
    json j;
    j["label"] = grp->label();
    j["order"] = grp->order();
    j["elements"] = grp->names();
    json gens = json::array();
    for (int x : grp->generators()) gens.push_back(grp->name(x));
    j["generators"] = gens;
    if (grp->sigma()) j["sigma"] = grp->name(*grp->sigma());
    if (grp->tau()) j["tau"] = grp->name(*grp->tau());
    bool abelian = true;
    for (int a = 0; a < grp->order(); ++a)
      for (int b = 0; b < grp->order(); ++b) abelian = abelian && grp->mul(a, b) == grp->mul(b, a);
    j["is_abelian"] = abelian;
    j["is_z_group"] = glattice::is_z_group(grp);
    j["subgroup_count"] = glattice::all_subgroups(grp).size();
    j["conjugacy_classes_of_subgroups"] = glattice::subgroup_conjugacy_reps(grp).size();
    json syl = json::array();
    for (int p : glattice::prime_divisors(grp->order())) {
      const auto s = glattice::sylow(grp, p);
      syl.push_back(json{{"p", p}, {"order", s.order()}, {"cyclic", s.is_cyclic()}});
    }
    j["sylow"] = syl;
    *out = dup(j.dump(2));
  });
}

glat_status glat_lattice_parse(const glat_group* g, const char* spec, glat_lattice** out) {
  if (!g) return null_arg("group");
  if (!spec) return null_arg("spec");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new glat_lattice{glattice::parse_lattice(g->g, spec)}; });
}

void glat_lattice_free(glat_lattice* m) { delete m; }

glat_status glat_lattice_rank(const glat_lattice* m, int* out) {
  if (!m) return null_arg("lattice");
  if (!out) return null_arg("out");
  *out = static_cast<int>(m->m.rank());
  return GLAT_OK;
}

glat_status glat_lattice_info_json(const glat_lattice* m, char** out) {
  if (!m) return null_arg("lattice");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto& grp = m->m.group();
    json j;
    j["group"] = grp->label();
    j["rank"] = m->m.rank();
    json acts = json::array();
    for (int x : grp->generators()) acts.push_back(json{{"element", grp->name(x)}, {"matrix", matrix_json(m->m.action(x))}});
    j["generator_actions"] = acts;
    j["flasque"] = verdict_json(glattice::flasque_verdict(m->m));
    j["coflasque"] = verdict_json(glattice::coflasque_verdict(m->m));
    *out = dup(j.dump(2));
  });
}

glat_status glat_flows_json(const char* graph_spec, char** out) {
  if (!graph_spec) return null_arg("graph_spec");
  if (!out) return null_arg("out");
  return guarded([&] {
    const glattice::GGraph x = glattice::parse_graph(graph_spec);
    json j;
    j["graph"] = graph_spec;
    j["group"] = x.group()->label();
    j["vertices"] = x.num_vertices();
    j["edges"] = x.num_edges();
    j["components"] = x.components().size();
    json edges = json::array();
    for (const auto& e : x.edges()) edges.push_back(json::array({e.source, e.target}));
    j["edge_list"] = edges;
    if (!x.is_connected()) {
      j["rank"] = nullptr;
      j["note"] = "graph is disconnected; flow lattices are built for connected graphs";
    } else {
      const auto fl = glattice::flow_lattice(x);
      j["rank"] = fl.lattice.rank();
      j["rank_formula"] = x.num_edges() - x.num_vertices() + 1;
      j["basis"] = matrix_json(fl.basis.transpose());
      j["coflasque"] = verdict_json(glattice::coflasque_verdict(fl.lattice));
    }
    *out = dup(j.dump(2));
  });
}

glat_status glat_tate_json(const glat_lattice* m, const char* subgroup_spec, int degree, char** out) {
  if (!m) return null_arg("lattice");
  if (!subgroup_spec) return null_arg("subgroup_spec");
  if (!out) return null_arg("out");
  return guarded([&] {
    const glattice::Subgroup h = glattice::parse_subgroup(m->m.group(), subgroup_spec);
    const glattice::TateGroup t = glattice::tate(m->m, h, degree);
    json j;
    j["degree"] = degree;
    j["subgroup"] = subgroup_spec;
    j["subgroup_order"] = h.order();
    j["invariant_factors"] = tate_json(t);
    j["group"] = t.to_string();
    *out = dup(j.dump(2));
  });
}

glat_status glat_resolve_json(const glat_lattice* m, const char* kind, char** out) {
  if (!m) return null_arg("lattice");
  if (!kind) return null_arg("kind");
  if (!out) return null_arg("out");
  return guarded([&] {
    const std::string k = kind;
    if (k != "coflasque" && k != "flasque")
      throw Error(Error::Kind::invalid_parameter, "resolution kind must be coflasque or flasque, got '" + k + "'");
    const glattice::ResolutionCertificate c =
        k == "coflasque" ? glattice::coflasque_resolution(m->m) : glattice::flasque_resolution(m->m);
    const std::string failure = glattice::certificate_failure(c);
    json j;
    j["kind"] = k;
    j["lattice_rank"] = m->m.rank();
    j["left_rank"] = c.sequence.left.source().rank();
    j["middle_rank"] = c.sequence.left.target().rank();
    j["right_rank"] = c.sequence.right.target().rank();
    j["permutation_witness"] = gset_json(c.permutation_witness);
    j["verified"] = failure.empty();
    if (!failure.empty()) j["failure"] = failure;
    j["maps"] = json{{"left", matrix_json(c.sequence.left.matrix())}, {"right", matrix_json(c.sequence.right.matrix())}};
    *out = dup(j.dump(2));
  });
}

glat_status glat_certify_json(const glat_lattice* m, char** out) {
  if (!m) return null_arg("lattice");
  if (!out) return null_arg("out");
  return guarded([&] {
    json j;
    const auto perm = glattice::find_permutation_basis(m->m);
    json pj{{"found", perm.found()}};
    if (perm.found()) pj["basis"] = matrix_json(perm.basis->transpose());
    else pj["reason"] = perm.reason;
    j["permutation"] = pj;
    const auto inv = glattice::invertibility_certificate(m->m);
    json ij{{"found", inv.has_value()}};
    if (inv) {
      json subs = json::array();
      for (const auto& h : inv->subgroups) subs.push_back(subgroup_json(h));
      ij["subgroups"] = subs;
      json coef = json::array();
      for (const auto& a : inv->coefficients) coef.push_back(integer_json(a));
      ij["coefficients"] = coef;
      const std::string failure = glattice::certificate_failure(*inv);
      ij["verified"] = failure.empty();
      if (!failure.empty()) ij["failure"] = failure;
    } else {
      ij["reason"] = "no Sylow restriction certificate found within the search bounds";
    }
    j["invertible"] = ij;
    *out = dup(j.dump(2));
  });
}

glat_status glat_check_ids_json(char** out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = dup(json(glattice::check_ids()).dump()); });
}

glat_status glat_check_run(const char* check_id, const char* params_json, int with_elapsed, char** report_json,
                           int* passed) {
  if (!check_id) return null_arg("check_id");
  if (!report_json) return null_arg("report_json");
  return guarded([&] {
    const auto r = glattice::run_check(check_id, params_from_json(params_json));
    *report_json = dup(r.to_json(with_elapsed != 0));
    if (passed) *passed = r.passed() ? 1 : 0;
  });
}

glat_status glat_suite_run(const char* suite, int with_s5, int with_elapsed, char** suite_json, int* passed) {
  if (!suite) return null_arg("suite");
  if (!suite_json) return null_arg("suite_json");
  return guarded([&] {
    const auto reps = glattice::run_suite(suite, glattice::SuiteOptions{with_s5 != 0});
    *suite_json = dup(glattice::suite_json(reps, with_elapsed != 0));
    if (passed) {
      bool ok = true;
      for (const auto& r : reps) ok = ok && r.passed();
      *passed = ok ? 1 : 0;
    }
  });
}

}  // extern "C"
