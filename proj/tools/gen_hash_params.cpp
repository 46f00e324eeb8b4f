// Regenerates the versioned hash-constants file (data/hash_constants.txt).
#include <cstdio>

#include "amr/hash.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: gen-hash-params <output-file>\n");
        return 2;
    }
    amr::write_params_file(argv[1], {amr::PermutationParams::standard(amr::HashKind::MiMC),
                                     amr::PermutationParams::standard(amr::HashKind::Poseidon)});
    return 0;
}
