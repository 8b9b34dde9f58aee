#pragma once

#include "ro3/catalyst.hpp"
#include "ro3/codec.hpp"
#include "ro3/container.hpp"
#include "ro3/deblur.hpp"
#include "ro3/error.hpp"
#include "ro3/image.hpp"
#include "ro3/image_io.hpp"
#include "ro3/metrics.hpp"
#include "ro3/pnm.hpp"
#include "ro3/ro3.hpp"
#include "ro3/threshold.hpp"
#include "ro3/wavelet.hpp"
