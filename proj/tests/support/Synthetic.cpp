#include "Synthetic.h"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace lodex::testkit {

namespace {

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool chance(Rng& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

RdfTerm subjectTerm(std::size_t i) {
  if (i % 4 == 3) return RdfTerm::blank("b" + std::to_string(i));
  return RdfTerm::iri("http://ex.org/e" + std::to_string(i));
}

void randomQuad(Rng& rng, const MicroLimits& limits, Quad& q) {
  q.s = subjectTerm(pick(rng, limits.maxSubjects));
  q.c = RdfTerm::iri("http://ex.org/src" +
                     std::to_string(pick(rng, limits.maxContexts)));
  if (chance(rng, 0.4)) {
    q.p = RdfTerm::iri(std::string(vocab::kRdfType));
    if (chance(rng, 0.08)) {
      q.o = RdfTerm::iri(std::string(vocab::kRdfsClass));
    } else {
      q.o = RdfTerm::iri("http://ex.org/C" + std::to_string(pick(rng, 4)));
    }
    return;
  }
  q.p = RdfTerm::iri("http://ex.org/p" + std::to_string(pick(rng, 4)));
  switch (pick(rng, 5)) {
    case 0: q.o = RdfTerm::literal("v" + std::to_string(pick(rng, 3))); break;
    case 1: q.o = RdfTerm::langLiteral("w", chance(rng, 0.5) ? "en" : "de"); break;
    case 2:
      q.o = RdfTerm::typedLiteral(std::to_string(pick(rng, 3)),
                                  "http://www.w3.org/2001/XMLSchema#int");
      break;
    default: q.o = subjectTerm(pick(rng, limits.maxSubjects)); break;
  }
}

}  // namespace

std::vector<Quad> randomMicroQuads(Rng& rng, const MicroLimits& limits) {
  std::size_t n = 1 + pick(rng, limits.maxQuads);
  std::vector<Quad> out;
  for (std::size_t i = 0; i < n; ++i) {
    Quad q;
    randomQuad(rng, limits, q);
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<Quad> perturb(const std::vector<Quad>& quads, Rng& rng,
                          const MicroLimits& limits) {
  std::vector<Quad> out;
  double dropRate = std::uniform_real_distribution<double>(0, 0.4)(rng);
  for (const auto& q : quads) {
    if (chance(rng, dropRate)) continue;
    Quad copy = q;
    if (chance(rng, 0.1)) randomQuad(rng, limits, copy);
    out.push_back(std::move(copy));
  }
  std::size_t extra = pick(rng, 6);
  for (std::size_t i = 0; i < extra && out.size() < limits.maxQuads; ++i) {
    Quad q;
    randomQuad(rng, limits, q);
    out.push_back(std::move(q));
  }
  if (out.empty()) out.push_back(quads.front());
  return out;
}

std::string toNQuadsDocument(const std::vector<Quad>& quads) {
  std::string doc;
  for (const auto& q : quads) doc += toNQuads(q) + '\n';
  return doc;
}

// ---------------------------------------------------------------------------
// Drifting series
// ---------------------------------------------------------------------------

namespace {

struct Entity {
  std::size_t id;
  std::vector<std::size_t> types;
  std::vector<std::size_t> properties;
  std::vector<std::size_t> links;  // entity ids
  std::size_t context;
  std::size_t version = 0;
};

constexpr std::size_t kClasses = 40;
constexpr std::size_t kProperties = 30;
constexpr std::size_t kContexts = 200;

void randomizeProfile(Entity& e, Rng& rng, std::size_t population) {
  // Skewed choice so that popular classes/properties dominate.
  auto skewed = [&](std::size_t n) {
    double u = std::uniform_real_distribution<double>(0, 1)(rng);
    return static_cast<std::size_t>(u * u * static_cast<double>(n));
  };
  e.types.clear();
  std::size_t nt = 1 + pick(rng, 3);
  for (std::size_t i = 0; i < nt; ++i) e.types.push_back(skewed(kClasses));
  e.properties.clear();
  std::size_t np = 2 + pick(rng, 4);
  for (std::size_t i = 0; i < np; ++i) e.properties.push_back(skewed(kProperties));
  e.links.clear();
  std::size_t nl = pick(rng, 3);
  for (std::size_t i = 0; i < nl; ++i) e.links.push_back(pick(rng, population));
  e.context = pick(rng, kContexts);
}

void writeEntity(std::ostream& out, const Entity& e) {
  const std::string s = "<http://data.example.org/entity/" +
                        std::to_string(e.id) + ">";
  const std::string c = " <http://source" + std::to_string(e.context) +
                        ".example.org/doc> .\n";
  for (auto t : e.types) {
    out << s << " <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> "
        << "<http://vocab.example.org/Class" << t << ">" << c;
  }
  for (auto p : e.properties) {
    out << s << " <http://vocab.example.org/prop" << p << "> \"value " << e.id
        << '-' << p << '-' << e.version << "\"" << c;
  }
  for (auto l : e.links) {
    out << s << " <http://vocab.example.org/link> "
        << "<http://data.example.org/entity/" << l << ">" << c;
  }
}

}  // namespace

std::vector<std::filesystem::path> writeDriftingSeries(
    const std::filesystem::path& dir, const SeriesSpec& spec) {
  std::filesystem::create_directories(dir);
  Rng rng(spec.seed);
  // ~6.5 statements per entity on average.
  std::size_t population = std::max<std::size_t>(
      10, spec.quadsPerSnapshot * 2 / 13);
  std::vector<Entity> entities(population);
  for (std::size_t i = 0; i < population; ++i) {
    entities[i].id = i;
    randomizeProfile(entities[i], rng, population);
  }
  std::size_t nextId = population;

  std::vector<std::filesystem::path> files;
  for (std::size_t t = 0; t < spec.snapshots; ++t) {
    if (t > 0) {
      // The amount of change varies per step so measure series are not
      // constant.
      double rate = spec.driftPerStep *
                    std::uniform_real_distribution<double>(0.2, 1.8)(rng);
      for (auto& e : entities) {
        if (!chance(rng, rate)) continue;
        switch (pick(rng, 4)) {
          case 0:  // replace by a fresh entity
            e.id = nextId++;
            randomizeProfile(e, rng, population);
            break;
          case 1:  // type drift
            e.types[pick(rng, e.types.size())] = pick(rng, kClasses);
            break;
          case 2:  // property drift
            if (chance(rng, 0.5) && e.properties.size() > 1) {
              e.properties.pop_back();
            } else {
              e.properties.push_back(pick(rng, kProperties));
            }
            break;
          default:  // value change only
            ++e.version;
            break;
        }
      }
    }
    char name[32];
    std::snprintf(name, sizeof name, "snap_%02zu.nq", t);
    auto path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    for (const auto& e : entities) writeEntity(out, e);
    files.push_back(path);
  }
  return files;
}

std::vector<std::vector<Quad>> singleEntrySeries(std::size_t subjects,
                                                 std::size_t snapshots,
                                                 Rng& rng) {
  auto statement = [](std::size_t i, std::size_t generation) {
    Quad q;
    q.s = RdfTerm::iri("http://ex.org/s" + std::to_string(i) + "/g" +
                       std::to_string(generation));
    q.p = RdfTerm::iri("http://ex.org/p");
    q.o = RdfTerm::literal("o" + std::to_string(i));
    q.c = RdfTerm::iri("http://ex.org/c");
    return q;
  };
  std::vector<std::vector<Quad>> series;
  for (std::size_t t = 0; t < snapshots; ++t) {
    std::size_t renamed = t == 0 ? 0 : 1 + pick(rng, subjects - 1);
    std::vector<Quad> quads;
    for (std::size_t i = 0; i < subjects; ++i) {
      quads.push_back(statement(i, i < renamed ? t : 0));
    }
    series.push_back(std::move(quads));
  }
  return series;
}

}  // namespace lodex::testkit
