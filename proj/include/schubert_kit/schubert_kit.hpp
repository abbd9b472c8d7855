#pragma once

#include "schubert_kit/bigint.hpp"
#include "schubert_kit/cartan.hpp"
#include "schubert_kit/coxeter.hpp"
#include "schubert_kit/demazure.hpp"
#include "schubert_kit/errors.hpp"
#include "schubert_kit/galois_field.hpp"
#include "schubert_kit/group_spec.hpp"
#include "schubert_kit/iwahori_weyl.hpp"
#include "schubert_kit/laurent_series.hpp"
#include "schubert_kit/lattice_model.hpp"
#include "schubert_kit/matrix.hpp"
#include "schubert_kit/root_datum.hpp"
#include "schubert_kit/witness.hpp"
