#include "elearn/artifacts.hpp"

#include <fstream>

#include "elearn/error.hpp"

namespace elearn {

namespace {

template <typename Fn>
auto guarded(std::string_view what, Fn&& fn) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + " artifact: " + e.what());
  }
}

Json dense_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd dense_from_json(const Json& rows, Eigen::Index cols) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), cols);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const auto& row = rows.at(static_cast<std::size_t>(r));
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorCode::ParseError, "ragged matrix row " + std::to_string(r));
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return m;
}

template <typename Storage>
Json sparse_entries(const Storage& s) {
  Json entries = Json::array();
  for (Eigen::Index t = 0; t < s.outerSize(); ++t) {
    for (typename Storage::InnerIterator it(s, t); it; ++it) {
      entries.push_back(Json::array({it.row(), it.col(), it.value()}));
    }
  }
  return entries;
}

template <typename Scalar, typename Storage>
Storage sparse_from_entries(const Json& entries, Eigen::Index rows, Eigen::Index cols) {
  std::vector<Eigen::Triplet<Scalar>> triplets;
  for (const auto& e : entries) {
    const auto t = e.at(0).get<Eigen::Index>();
    const auto d = e.at(1).get<Eigen::Index>();
    if (t < 0 || t >= rows || d < 0 || d >= cols) throw Error(ErrorCode::ParseError, "entry out of bounds");
    triplets.emplace_back(t, d, e.at(2).get<Scalar>());
  }
  Storage s(rows, cols);
  s.setFromTriplets(triplets.begin(), triplets.end());
  s.makeCompressed();
  return s;
}

Json memberships_to_json(const MembershipTriple& m) {
  return Json{{"low", m.low}, {"medium", m.medium}, {"high", m.high}};
}

}  // namespace

Json tokens_to_json(const std::vector<TaggedDocument>& docs) {
  Json out = Json::array();
  for (const auto& doc : docs) {
    Json toks = Json::array();
    for (const auto& t : doc.tokens) toks.push_back(Json::array({t.surface, std::string(to_string(t.pos))}));
    out.push_back(Json{{"id", doc.id}, {"tokens", std::move(toks)}});
  }
  return Json{{"documents", std::move(out)}};
}

std::vector<TaggedDocument> tokens_from_json(const Json& j) {
  return guarded("tokens", [&] {
    std::vector<TaggedDocument> docs;
    for (const auto& d : j.at("documents")) {
      TaggedDocument doc;
      doc.id = d.at("id").get<std::string>();
      for (const auto& t : d.at("tokens")) {
        const auto tag = parse_pos_tag(t.at(1).get<std::string>());
        if (!tag) throw Error(ErrorCode::ParseError, "unknown tag in tokens artifact");
        doc.tokens.push_back(Token{t.at(0).get<std::string>(), *tag, doc.tokens.size()});
      }
      docs.push_back(std::move(doc));
    }
    return docs;
  });
}

Json matrix_to_json(const TermDocumentMatrix& m) {
  return Json{{"terms", m.index.terms()}, {"docs", m.doc_ids}, {"entries", sparse_entries(m.counts)}};
}

TermDocumentMatrix matrix_from_json(const Json& j) {
  return guarded("matrix", [&] {
    TermDocumentMatrix m;
    m.index = TermIndex(j.at("terms").get<std::vector<std::string>>());
    m.doc_ids = j.at("docs").get<std::vector<std::string>>();
    m.counts = sparse_from_entries<int, CountMatrix>(j.at("entries"), m.num_terms(), m.num_docs());
    return m;
  });
}

Json weights_to_json(const WeightMatrix& w) {
  return Json{{"terms", w.index.terms()}, {"docs", w.doc_ids}, {"entries", sparse_entries(w.weights)}};
}

WeightMatrix weights_from_json(const Json& j) {
  return guarded("weights", [&] {
    WeightMatrix w;
    w.index = TermIndex(j.at("terms").get<std::vector<std::string>>());
    w.doc_ids = j.at("docs").get<std::vector<std::string>>();
    w.weights = sparse_from_entries<double, WeightStorage>(j.at("entries"), w.num_terms(), w.num_docs());
    return w;
  });
}

Json latent_to_json(const LatentArtifact& a) {
  return Json{{"k", a.k},
              {"S", std::vector<double>(a.model.S.data(), a.model.S.data() + a.model.S.size())},
              {"U", dense_to_json(a.model.U)},
              {"V", dense_to_json(a.model.V)}};
}

LatentArtifact latent_from_json(const Json& j) {
  return guarded("latent", [&] {
    LatentArtifact a;
    a.k = j.at("k").get<Eigen::Index>();
    const auto s = j.at("S").get<std::vector<double>>();
    a.model.S = Eigen::Map<const Eigen::VectorXd>(s.data(), static_cast<Eigen::Index>(s.size()));
    a.model.U = dense_from_json(j.at("U"), a.model.S.size());
    a.model.V = dense_from_json(j.at("V"), a.model.S.size());
    return a;
  });
}

Json concept_map_to_json(const ConceptMap& m) {
  Json relations = Json::array();
  for (const auto& [pair, w] : m.relations) relations.push_back(Json::array({pair.first, pair.second, w}));
  return Json{{"concepts", m.concepts}, {"relations", std::move(relations)}};
}

ConceptMap concept_map_from_json(const Json& j) {
  return guarded("concept map", [&] {
    ConceptMap m;
    for (const auto& c : j.at("concepts")) m.concepts.insert(c.get<std::string>());
    for (const auto& r : j.at("relations")) {
      m.add_relation(r.at(0).get<std::string>(), r.at(1).get<std::string>(), r.at(2).get<double>());
    }
    return m;
  });
}

Json clusters_to_json(const ClusterArtifact& a) {
  Json labels = Json::object();
  for (const auto& [id, name] : a.labels) labels[std::to_string(id)] = name;
  return Json{{"k", a.model.k},
              {"seed", a.model.seed},
              {"objective", a.model.objective},
              {"iterations", a.model.iterations},
              {"centroids", dense_to_json(a.model.centroids)},
              {"assignments", a.model.assignments},
              {"labels", std::move(labels)}};
}

ClusterArtifact clusters_from_json(const Json& j) {
  return guarded("clusters", [&] {
    ClusterArtifact a;
    a.model.k = j.at("k").get<Eigen::Index>();
    a.model.seed = j.at("seed").get<std::uint64_t>();
    a.model.objective = j.at("objective").get<double>();
    a.model.iterations = j.at("iterations").get<int>();
    const auto& rows = j.at("centroids");
    const auto dim = rows.empty() ? 0 : static_cast<Eigen::Index>(rows.at(0).size());
    a.model.centroids = dense_from_json(rows, dim);
    a.model.assignments = j.at("assignments").get<std::vector<Eigen::Index>>();
    for (const auto& [key, value] : j.at("labels").items()) {
      a.labels[std::stol(key)] = value.get<std::string>();
    }
    return a;
  });
}

Json classification_to_json(const Classification& c) {
  return Json{{"similarity", c.similarity},
              {"memberships", memberships_to_json(c.assignment.memberships)},
              {"level", std::string(to_string(c.assignment.level))},
              {"support", c.assignment.support}};
}

Classification classification_from_json(const Json& j) {
  return guarded("classification", [&] {
    Classification c;
    c.similarity = j.at("similarity").get<double>();
    const auto& m = j.at("memberships");
    c.assignment.memberships = {m.at("low").get<double>(), m.at("medium").get<double>(),
                                m.at("high").get<double>()};
    const auto level = parse_level(j.at("level").get<std::string>());
    if (!level) throw Error(ErrorCode::ParseError, "unknown level");
    c.assignment.level = *level;
    c.assignment.support = j.at("support").get<double>();
    return c;
  });
}

Json recommendation_to_json(const Recommendation& r) {
  return Json{{"action", std::string(to_string(r.action))},
              {"deliver_group", r.deliver_group ? Json(*r.deliver_group) : Json(nullptr)},
              {"rationale", r.rationale}};
}

Recommendation recommendation_from_json(const Json& j) {
  return guarded("recommendation", [&] {
    Recommendation r;
    const auto action = parse_action(j.at("action").get<std::string>());
    if (!action) throw Error(ErrorCode::ParseError, "unknown action");
    r.action = *action;
    if (!j.at("deliver_group").is_null()) r.deliver_group = j.at("deliver_group").get<Eigen::Index>();
    r.rationale = j.at("rationale").get<std::vector<std::string>>();
    return r;
  });
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

}  // namespace elearn
