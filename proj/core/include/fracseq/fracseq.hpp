#pragma once

#include "fracseq/coefficients.hpp"
#include "fracseq/compactness.hpp"
#include "fracseq/errors.hpp"
#include "fracseq/matrix_domain.hpp"
#include "fracseq/matrix_source.hpp"
#include "fracseq/order.hpp"
#include "fracseq/rational.hpp"
#include "fracseq/sequence.hpp"
#include "fracseq/serialize.hpp"
#include "fracseq/transforms.hpp"
