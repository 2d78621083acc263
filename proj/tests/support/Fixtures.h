#pragma once

#include <string>

#include "lodex/Dataset.h"
#include "lodex/Term.h"

namespace lodex::testkit {

inline const std::string kFixtureA =
    "<http://ex/e1> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> "
    "<http://ex/Person> <http://ex/c1> .\n"
    "<http://ex/e1> <http://ex/name> \"Ann\" <http://ex/c1> .\n"
    "<http://ex/e2> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> "
    "<http://ex/Person> <http://ex/c2> .\n"
    "<http://ex/e2> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> "
    "<http://ex/Author> <http://ex/c2> .\n"
    "<http://ex/e2> <http://ex/name> \"Bob\" <http://ex/c2> .\n";

// FIXTURE-A without the Author typing of e2.
inline const std::string kFixtureB =
    "<http://ex/e1> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> "
    "<http://ex/Person> <http://ex/c1> .\n"
    "<http://ex/e1> <http://ex/name> \"Ann\" <http://ex/c1> .\n"
    "<http://ex/e2> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> "
    "<http://ex/Person> <http://ex/c2> .\n"
    "<http://ex/e2> <http://ex/name> \"Bob\" <http://ex/c2> .\n";

inline Dataset fixtureA() { return datasetFromString(kFixtureA, "A"); }
inline Dataset fixtureB() { return datasetFromString(kFixtureB, "B"); }

inline RdfTerm ex(const std::string& local) {
  return RdfTerm::iri("http://ex/" + local);
}

inline RdfTerm rdfType() { return RdfTerm::iri(std::string(vocab::kRdfType)); }

}  // namespace lodex::testkit
