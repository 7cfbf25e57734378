/*
 * Copyright 2026 The supobf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdlib>
#include <istream>
#include <sstream>
#include <string>

#include "supobf/alphabet.hpp"
#include "supobf/sat.hpp"

namespace supobf {

CnfInstance parse_dimacs(std::istream& in) {
    CnfInstance cnf;
    bool header = false;
    std::size_t declared_clauses = 0;
    Clause current;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == 'c' || tok[0] == '%') continue;
        if (tok == "p") {
            std::string fmt;
            if (header || !(ls >> fmt >> cnf.num_vars >> declared_clauses) || fmt != "cnf")
                throw Error("dimacs line " + std::to_string(lineno) + ": bad header");
            header = true;
            continue;
        }
        if (!header) throw Error("dimacs line " + std::to_string(lineno) + ": clause before header");
        do {
            char* end = nullptr;
            long v = std::strtol(tok.c_str(), &end, 10);
            if (*end != '\0') throw Error("dimacs line " + std::to_string(lineno) + ": bad literal '" + tok + "'");
            if (v == 0) {
                cnf.clauses.push_back(std::move(current));
                current.clear();
            } else {
                if (std::labs(v) > cnf.num_vars)
                    throw Error("dimacs line " + std::to_string(lineno) + ": variable out of range");
                current.push_back(static_cast<Literal>(v));
            }
        } while (ls >> tok);
    }
    if (!header) throw Error("dimacs: missing header");
    if (!current.empty()) throw Error("dimacs: unterminated clause");
    if (cnf.clauses.size() != declared_clauses) throw Error("dimacs: clause count does not match header");
    return cnf;
}

}  // namespace supobf
