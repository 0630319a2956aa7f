#pragma once

#include "vigkit/alphabet.hpp"
#include "vigkit/cipher.hpp"
#include "vigkit/error.hpp"
#include "vigkit/frame.hpp"
#include "vigkit/kasiski.hpp"
#include "vigkit/keystream.hpp"
#include "vigkit/text.hpp"
#include "vigkit/threepass.hpp"
#include "vigkit/transport.hpp"
