#ifndef POPALIGN_POPALIGN_HPP
#define POPALIGN_POPALIGN_HPP

#include "popalign/analyze.hpp"
#include "popalign/degree.hpp"
#include "popalign/errors.hpp"
#include "popalign/interaction_matrix.hpp"
#include "popalign/io.hpp"
#include "popalign/lp_bounds.hpp"
#include "popalign/motifs.hpp"
#include "popalign/pi1_bounds.hpp"
#include "popalign/pik_bounds.hpp"
#include "popalign/report_json.hpp"
#include "popalign/rng.hpp"
#include "popalign/spectral.hpp"
#include "popalign/synth.hpp"

#endif
