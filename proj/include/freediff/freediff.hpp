#pragma once

#include "freediff/certificate.hpp"
#include "freediff/certify.hpp"
#include "freediff/diffeo.hpp"
#include "freediff/interval_chain.hpp"
#include "freediff/pingpong.hpp"
#include "freediff/pl_homeo.hpp"
#include "freediff/rational.hpp"
#include "freediff/schedule.hpp"
#include "freediff/word_order.hpp"
#include "freediff/words.hpp"
