#pragma once

#include "statecraft/graph.hpp"
#include "statecraft/layers.hpp"

namespace statecraft {

// One row per backbone layer, in the canonical published enumeration for
// this topology (311 layers, input included). Branch layers interleave by
// graph depth rather than by construction order; freeze boundaries are
// expressed against these indices, so the order is load-bearing.
struct InceptionRow {
    const char* name;
    LayerKind kind;
    int in0, in1, in2, in3;
    int filters, kh, kw, sh, sw;
    Padding pad;
};

namespace detail {

using K = LayerKind;
using P = Padding;

inline constexpr InceptionRow kInceptionV3Rows[] = {
    {"input_layer", K::Input, -1, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 0
    {"conv2d", K::Conv2D, 0, -1, -1, -1, 32, 3, 3, 2, 2, P::Valid},  // 1
    {"batch_normalization", K::BatchNorm, 1, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 2
    {"activation", K::Activation, 2, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 3
    {"conv2d_1", K::Conv2D, 3, -1, -1, -1, 32, 3, 3, 1, 1, P::Valid},  // 4
    {"batch_normalization_1", K::BatchNorm, 4, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 5
    {"activation_1", K::Activation, 5, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 6
    {"conv2d_2", K::Conv2D, 6, -1, -1, -1, 64, 3, 3, 1, 1, P::Same},  // 7
    {"batch_normalization_2", K::BatchNorm, 7, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 8
    {"activation_2", K::Activation, 8, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 9
    {"max_pooling2d", K::MaxPool, 9, -1, -1, -1, 0, 3, 3, 2, 2, P::Valid},  // 10
    {"conv2d_3", K::Conv2D, 10, -1, -1, -1, 80, 1, 1, 1, 1, P::Valid},  // 11
    {"batch_normalization_3", K::BatchNorm, 11, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 12
    {"activation_3", K::Activation, 12, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 13
    {"conv2d_4", K::Conv2D, 13, -1, -1, -1, 192, 3, 3, 1, 1, P::Valid},  // 14
    {"batch_normalization_4", K::BatchNorm, 14, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 15
    {"activation_4", K::Activation, 15, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 16
    {"max_pooling2d_1", K::MaxPool, 16, -1, -1, -1, 0, 3, 3, 2, 2, P::Valid},  // 17
    {"conv2d_8", K::Conv2D, 17, -1, -1, -1, 64, 1, 1, 1, 1, P::Same},  // 18
    {"batch_normalization_8", K::BatchNorm, 18, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 19
    {"activation_8", K::Activation, 19, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 20
    {"conv2d_6", K::Conv2D, 17, -1, -1, -1, 48, 1, 1, 1, 1, P::Same},  // 21
    {"conv2d_9", K::Conv2D, 20, -1, -1, -1, 96, 3, 3, 1, 1, P::Same},  // 22
    {"batch_normalization_6", K::BatchNorm, 21, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 23
    {"batch_normalization_9", K::BatchNorm, 22, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 24
    {"activation_6", K::Activation, 23, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 25
    {"activation_9", K::Activation, 24, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 26
    {"average_pooling2d", K::AvgPool, 17, -1, -1, -1, 0, 3, 3, 1, 1, P::Same},  // 27
    {"conv2d_5", K::Conv2D, 17, -1, -1, -1, 64, 1, 1, 1, 1, P::Same},  // 28
    {"conv2d_7", K::Conv2D, 25, -1, -1, -1, 64, 5, 5, 1, 1, P::Same},  // 29
    {"conv2d_10", K::Conv2D, 26, -1, -1, -1, 96, 3, 3, 1, 1, P::Same},  // 30
    {"conv2d_11", K::Conv2D, 27, -1, -1, -1, 32, 1, 1, 1, 1, P::Same},  // 31
    {"batch_normalization_5", K::BatchNorm, 28, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 32
    {"batch_normalization_7", K::BatchNorm, 29, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 33
    {"batch_normalization_10", K::BatchNorm, 30, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 34
    {"batch_normalization_11", K::BatchNorm, 31, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 35
    {"activation_5", K::Activation, 32, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 36
    {"activation_7", K::Activation, 33, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 37
    {"activation_10", K::Activation, 34, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 38
    {"activation_11", K::Activation, 35, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 39
    {"mixed0", K::Concat, 36, 37, 38, 39, 0, 0, 0, 0, 0, P::Same},  // 40
    {"conv2d_15", K::Conv2D, 40, -1, -1, -1, 64, 1, 1, 1, 1, P::Same},  // 41
    {"batch_normalization_15", K::BatchNorm, 41, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 42
    {"activation_15", K::Activation, 42, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 43
    {"conv2d_13", K::Conv2D, 40, -1, -1, -1, 48, 1, 1, 1, 1, P::Same},  // 44
    {"conv2d_16", K::Conv2D, 43, -1, -1, -1, 96, 3, 3, 1, 1, P::Same},  // 45
    {"batch_normalization_13", K::BatchNorm, 44, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 46
    {"batch_normalization_16", K::BatchNorm, 45, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 47
    {"activation_13", K::Activation, 46, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 48
    {"activation_16", K::Activation, 47, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 49
    {"average_pooling2d_1", K::AvgPool, 40, -1, -1, -1, 0, 3, 3, 1, 1, P::Same},  // 50
    {"conv2d_12", K::Conv2D, 40, -1, -1, -1, 64, 1, 1, 1, 1, P::Same},  // 51
    {"conv2d_14", K::Conv2D, 48, -1, -1, -1, 64, 5, 5, 1, 1, P::Same},  // 52
    {"conv2d_17", K::Conv2D, 49, -1, -1, -1, 96, 3, 3, 1, 1, P::Same},  // 53
    {"conv2d_18", K::Conv2D, 50, -1, -1, -1, 64, 1, 1, 1, 1, P::Same},  // 54
    {"batch_normalization_12", K::BatchNorm, 51, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 55
    {"batch_normalization_14", K::BatchNorm, 52, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 56
    {"batch_normalization_17", K::BatchNorm, 53, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 57
    {"batch_normalization_18", K::BatchNorm, 54, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 58
    {"activation_12", K::Activation, 55, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 59
    {"activation_14", K::Activation, 56, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 60
    {"activation_17", K::Activation, 57, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 61
    {"activation_18", K::Activation, 58, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 62
    {"mixed1", K::Concat, 59, 60, 61, 62, 0, 0, 0, 0, 0, P::Same},  // 63
    {"conv2d_22", K::Conv2D, 63, -1, -1, -1, 64, 1, 1, 1, 1, P::Same},  // 64
    {"batch_normalization_22", K::BatchNorm, 64, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 65
    {"activation_22", K::Activation, 65, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 66
    {"conv2d_20", K::Conv2D, 63, -1, -1, -1, 48, 1, 1, 1, 1, P::Same},  // 67
    {"conv2d_23", K::Conv2D, 66, -1, -1, -1, 96, 3, 3, 1, 1, P::Same},  // 68
    {"batch_normalization_20", K::BatchNorm, 67, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 69
    {"batch_normalization_23", K::BatchNorm, 68, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 70
    {"activation_20", K::Activation, 69, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 71
    {"activation_23", K::Activation, 70, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 72
    {"average_pooling2d_2", K::AvgPool, 63, -1, -1, -1, 0, 3, 3, 1, 1, P::Same},  // 73
    {"conv2d_19", K::Conv2D, 63, -1, -1, -1, 64, 1, 1, 1, 1, P::Same},  // 74
    {"conv2d_21", K::Conv2D, 71, -1, -1, -1, 64, 5, 5, 1, 1, P::Same},  // 75
    {"conv2d_24", K::Conv2D, 72, -1, -1, -1, 96, 3, 3, 1, 1, P::Same},  // 76
    {"conv2d_25", K::Conv2D, 73, -1, -1, -1, 64, 1, 1, 1, 1, P::Same},  // 77
    {"batch_normalization_19", K::BatchNorm, 74, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 78
    {"batch_normalization_21", K::BatchNorm, 75, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 79
    {"batch_normalization_24", K::BatchNorm, 76, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 80
    {"batch_normalization_25", K::BatchNorm, 77, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 81
    {"activation_19", K::Activation, 78, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 82
    {"activation_21", K::Activation, 79, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 83
    {"activation_24", K::Activation, 80, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 84
    {"activation_25", K::Activation, 81, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 85
    {"mixed2", K::Concat, 82, 83, 84, 85, 0, 0, 0, 0, 0, P::Same},  // 86
    {"conv2d_27", K::Conv2D, 86, -1, -1, -1, 64, 1, 1, 1, 1, P::Same},  // 87
    {"batch_normalization_27", K::BatchNorm, 87, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 88
    {"activation_27", K::Activation, 88, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 89
    {"conv2d_28", K::Conv2D, 89, -1, -1, -1, 96, 3, 3, 1, 1, P::Same},  // 90
    {"batch_normalization_28", K::BatchNorm, 90, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 91
    {"activation_28", K::Activation, 91, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 92
    {"conv2d_26", K::Conv2D, 86, -1, -1, -1, 384, 3, 3, 2, 2, P::Valid},  // 93
    {"conv2d_29", K::Conv2D, 92, -1, -1, -1, 96, 3, 3, 2, 2, P::Valid},  // 94
    {"batch_normalization_26", K::BatchNorm, 93, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 95
    {"batch_normalization_29", K::BatchNorm, 94, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 96
    {"activation_26", K::Activation, 95, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 97
    {"activation_29", K::Activation, 96, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 98
    {"max_pooling2d_2", K::MaxPool, 86, -1, -1, -1, 0, 3, 3, 2, 2, P::Valid},  // 99
    {"mixed3", K::Concat, 97, 98, 99, -1, 0, 0, 0, 0, 0, P::Same},  // 100
    {"conv2d_34", K::Conv2D, 100, -1, -1, -1, 128, 1, 1, 1, 1, P::Same},  // 101
    {"batch_normalization_34", K::BatchNorm, 101, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 102
    {"activation_34", K::Activation, 102, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 103
    {"conv2d_35", K::Conv2D, 103, -1, -1, -1, 128, 7, 1, 1, 1, P::Same},  // 104
    {"batch_normalization_35", K::BatchNorm, 104, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 105
    {"activation_35", K::Activation, 105, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 106
    {"conv2d_31", K::Conv2D, 100, -1, -1, -1, 128, 1, 1, 1, 1, P::Same},  // 107
    {"conv2d_36", K::Conv2D, 106, -1, -1, -1, 128, 1, 7, 1, 1, P::Same},  // 108
    {"batch_normalization_31", K::BatchNorm, 107, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 109
    {"batch_normalization_36", K::BatchNorm, 108, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 110
    {"activation_31", K::Activation, 109, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 111
    {"activation_36", K::Activation, 110, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 112
    {"conv2d_32", K::Conv2D, 111, -1, -1, -1, 128, 1, 7, 1, 1, P::Same},  // 113
    {"conv2d_37", K::Conv2D, 112, -1, -1, -1, 128, 7, 1, 1, 1, P::Same},  // 114
    {"batch_normalization_32", K::BatchNorm, 113, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 115
    {"batch_normalization_37", K::BatchNorm, 114, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 116
    {"activation_32", K::Activation, 115, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 117
    {"activation_37", K::Activation, 116, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 118
    {"average_pooling2d_3", K::AvgPool, 100, -1, -1, -1, 0, 3, 3, 1, 1, P::Same},  // 119
    {"conv2d_30", K::Conv2D, 100, -1, -1, -1, 192, 1, 1, 1, 1, P::Same},  // 120
    {"conv2d_33", K::Conv2D, 117, -1, -1, -1, 192, 7, 1, 1, 1, P::Same},  // 121
    {"conv2d_38", K::Conv2D, 118, -1, -1, -1, 192, 1, 7, 1, 1, P::Same},  // 122
    {"conv2d_39", K::Conv2D, 119, -1, -1, -1, 192, 1, 1, 1, 1, P::Same},  // 123
    {"batch_normalization_30", K::BatchNorm, 120, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 124
    {"batch_normalization_33", K::BatchNorm, 121, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 125
    {"batch_normalization_38", K::BatchNorm, 122, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 126
    {"batch_normalization_39", K::BatchNorm, 123, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 127
    {"activation_30", K::Activation, 124, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 128
    {"activation_33", K::Activation, 125, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 129
    {"activation_38", K::Activation, 126, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 130
    {"activation_39", K::Activation, 127, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 131
    {"mixed4", K::Concat, 128, 129, 130, 131, 0, 0, 0, 0, 0, P::Same},  // 132
    {"conv2d_44", K::Conv2D, 132, -1, -1, -1, 160, 1, 1, 1, 1, P::Same},  // 133
    {"batch_normalization_44", K::BatchNorm, 133, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 134
    {"activation_44", K::Activation, 134, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 135
    {"conv2d_45", K::Conv2D, 135, -1, -1, -1, 160, 7, 1, 1, 1, P::Same},  // 136
    {"batch_normalization_45", K::BatchNorm, 136, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 137
    {"activation_45", K::Activation, 137, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 138
    {"conv2d_41", K::Conv2D, 132, -1, -1, -1, 160, 1, 1, 1, 1, P::Same},  // 139
    {"conv2d_46", K::Conv2D, 138, -1, -1, -1, 160, 1, 7, 1, 1, P::Same},  // 140
    {"batch_normalization_41", K::BatchNorm, 139, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 141
    {"batch_normalization_46", K::BatchNorm, 140, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 142
    {"activation_41", K::Activation, 141, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 143
    {"activation_46", K::Activation, 142, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 144
    {"conv2d_42", K::Conv2D, 143, -1, -1, -1, 160, 1, 7, 1, 1, P::Same},  // 145
    {"conv2d_47", K::Conv2D, 144, -1, -1, -1, 160, 7, 1, 1, 1, P::Same},  // 146
    {"batch_normalization_42", K::BatchNorm, 145, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 147
    {"batch_normalization_47", K::BatchNorm, 146, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 148
    {"activation_42", K::Activation, 147, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 149
    {"activation_47", K::Activation, 148, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 150
    {"average_pooling2d_4", K::AvgPool, 132, -1, -1, -1, 0, 3, 3, 1, 1, P::Same},  // 151
    {"conv2d_40", K::Conv2D, 132, -1, -1, -1, 192, 1, 1, 1, 1, P::Same},  // 152
    {"conv2d_43", K::Conv2D, 149, -1, -1, -1, 192, 7, 1, 1, 1, P::Same},  // 153
    {"conv2d_48", K::Conv2D, 150, -1, -1, -1, 192, 1, 7, 1, 1, P::Same},  // 154
    {"conv2d_49", K::Conv2D, 151, -1, -1, -1, 192, 1, 1, 1, 1, P::Same},  // 155
    {"batch_normalization_40", K::BatchNorm, 152, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 156
    {"batch_normalization_43", K::BatchNorm, 153, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 157
    {"batch_normalization_48", K::BatchNorm, 154, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 158
    {"batch_normalization_49", K::BatchNorm, 155, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 159
    {"activation_40", K::Activation, 156, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 160
    {"activation_43", K::Activation, 157, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 161
    {"activation_48", K::Activation, 158, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 162
    {"activation_49", K::Activation, 159, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 163
    {"mixed5", K::Concat, 160, 161, 162, 163, 0, 0, 0, 0, 0, P::Same},  // 164
    {"conv2d_54", K::Conv2D, 164, -1, -1, -1, 160, 1, 1, 1, 1, P::Same},  // 165
    {"batch_normalization_54", K::BatchNorm, 165, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 166
    {"activation_54", K::Activation, 166, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 167
    {"conv2d_55", K::Conv2D, 167, -1, -1, -1, 160, 7, 1, 1, 1, P::Same},  // 168
    {"batch_normalization_55", K::BatchNorm, 168, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 169
    {"activation_55", K::Activation, 169, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 170
    {"conv2d_51", K::Conv2D, 164, -1, -1, -1, 160, 1, 1, 1, 1, P::Same},  // 171
    {"conv2d_56", K::Conv2D, 170, -1, -1, -1, 160, 1, 7, 1, 1, P::Same},  // 172
    {"batch_normalization_51", K::BatchNorm, 171, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 173
    {"batch_normalization_56", K::BatchNorm, 172, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 174
    {"activation_51", K::Activation, 173, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 175
    {"activation_56", K::Activation, 174, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 176
    {"conv2d_52", K::Conv2D, 175, -1, -1, -1, 160, 1, 7, 1, 1, P::Same},  // 177
    {"conv2d_57", K::Conv2D, 176, -1, -1, -1, 160, 7, 1, 1, 1, P::Same},  // 178
    {"batch_normalization_52", K::BatchNorm, 177, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 179
    {"batch_normalization_57", K::BatchNorm, 178, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 180
    {"activation_52", K::Activation, 179, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 181
    {"activation_57", K::Activation, 180, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 182
    {"average_pooling2d_5", K::AvgPool, 164, -1, -1, -1, 0, 3, 3, 1, 1, P::Same},  // 183
    {"conv2d_50", K::Conv2D, 164, -1, -1, -1, 192, 1, 1, 1, 1, P::Same},  // 184
    {"conv2d_53", K::Conv2D, 181, -1, -1, -1, 192, 7, 1, 1, 1, P::Same},  // 185
    {"conv2d_58", K::Conv2D, 182, -1, -1, -1, 192, 1, 7, 1, 1, P::Same},  // 186
    {"conv2d_59", K::Conv2D, 183, -1, -1, -1, 192, 1, 1, 1, 1, P::Same},  // 187
    {"batch_normalization_50", K::BatchNorm, 184, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 188
    {"batch_normalization_53", K::BatchNorm, 185, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 189
    {"batch_normalization_58", K::BatchNorm, 186, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 190
    {"batch_normalization_59", K::BatchNorm, 187, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 191
    {"activation_50", K::Activation, 188, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 192
    {"activation_53", K::Activation, 189, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 193
    {"activation_58", K::Activation, 190, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 194
    {"activation_59", K::Activation, 191, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 195
    {"mixed6", K::Concat, 192, 193, 194, 195, 0, 0, 0, 0, 0, P::Same},  // 196
    {"conv2d_64", K::Conv2D, 196, -1, -1, -1, 192, 1, 1, 1, 1, P::Same},  // 197
    {"batch_normalization_64", K::BatchNorm, 197, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 198
    {"activation_64", K::Activation, 198, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 199
    {"conv2d_65", K::Conv2D, 199, -1, -1, -1, 192, 7, 1, 1, 1, P::Same},  // 200
    {"batch_normalization_65", K::BatchNorm, 200, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 201
    {"activation_65", K::Activation, 201, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 202
    {"conv2d_61", K::Conv2D, 196, -1, -1, -1, 192, 1, 1, 1, 1, P::Same},  // 203
    {"conv2d_66", K::Conv2D, 202, -1, -1, -1, 192, 1, 7, 1, 1, P::Same},  // 204
    {"batch_normalization_61", K::BatchNorm, 203, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 205
    {"batch_normalization_66", K::BatchNorm, 204, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 206
    {"activation_61", K::Activation, 205, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 207
    {"activation_66", K::Activation, 206, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 208
    {"conv2d_62", K::Conv2D, 207, -1, -1, -1, 192, 1, 7, 1, 1, P::Same},  // 209
    {"conv2d_67", K::Conv2D, 208, -1, -1, -1, 192, 7, 1, 1, 1, P::Same},  // 210
    {"batch_normalization_62", K::BatchNorm, 209, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 211
    {"batch_normalization_67", K::BatchNorm, 210, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 212
    {"activation_62", K::Activation, 211, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 213
    {"activation_67", K::Activation, 212, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 214
    {"average_pooling2d_6", K::AvgPool, 196, -1, -1, -1, 0, 3, 3, 1, 1, P::Same},  // 215
    {"conv2d_60", K::Conv2D, 196, -1, -1, -1, 192, 1, 1, 1, 1, P::Same},  // 216
    {"conv2d_63", K::Conv2D, 213, -1, -1, -1, 192, 7, 1, 1, 1, P::Same},  // 217
    {"conv2d_68", K::Conv2D, 214, -1, -1, -1, 192, 1, 7, 1, 1, P::Same},  // 218
    {"conv2d_69", K::Conv2D, 215, -1, -1, -1, 192, 1, 1, 1, 1, P::Same},  // 219
    {"batch_normalization_60", K::BatchNorm, 216, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 220
    {"batch_normalization_63", K::BatchNorm, 217, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 221
    {"batch_normalization_68", K::BatchNorm, 218, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 222
    {"batch_normalization_69", K::BatchNorm, 219, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 223
    {"activation_60", K::Activation, 220, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 224
    {"activation_63", K::Activation, 221, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 225
    {"activation_68", K::Activation, 222, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 226
    {"activation_69", K::Activation, 223, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 227
    {"mixed7", K::Concat, 224, 225, 226, 227, 0, 0, 0, 0, 0, P::Same},  // 228
    {"conv2d_72", K::Conv2D, 228, -1, -1, -1, 192, 1, 1, 1, 1, P::Same},  // 229
    {"batch_normalization_72", K::BatchNorm, 229, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 230
    {"activation_72", K::Activation, 230, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 231
    {"conv2d_73", K::Conv2D, 231, -1, -1, -1, 192, 1, 7, 1, 1, P::Same},  // 232
    {"batch_normalization_73", K::BatchNorm, 232, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 233
    {"activation_73", K::Activation, 233, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 234
    {"conv2d_70", K::Conv2D, 228, -1, -1, -1, 192, 1, 1, 1, 1, P::Same},  // 235
    {"conv2d_74", K::Conv2D, 234, -1, -1, -1, 192, 7, 1, 1, 1, P::Same},  // 236
    {"batch_normalization_70", K::BatchNorm, 235, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 237
    {"batch_normalization_74", K::BatchNorm, 236, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 238
    {"activation_70", K::Activation, 237, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 239
    {"activation_74", K::Activation, 238, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 240
    {"conv2d_71", K::Conv2D, 239, -1, -1, -1, 320, 3, 3, 2, 2, P::Valid},  // 241
    {"conv2d_75", K::Conv2D, 240, -1, -1, -1, 192, 3, 3, 2, 2, P::Valid},  // 242
    {"batch_normalization_71", K::BatchNorm, 241, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 243
    {"batch_normalization_75", K::BatchNorm, 242, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 244
    {"activation_71", K::Activation, 243, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 245
    {"activation_75", K::Activation, 244, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 246
    {"max_pooling2d_3", K::MaxPool, 228, -1, -1, -1, 0, 3, 3, 2, 2, P::Valid},  // 247
    {"mixed8", K::Concat, 245, 246, 247, -1, 0, 0, 0, 0, 0, P::Same},  // 248
    {"conv2d_80", K::Conv2D, 248, -1, -1, -1, 448, 1, 1, 1, 1, P::Same},  // 249
    {"batch_normalization_80", K::BatchNorm, 249, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 250
    {"activation_80", K::Activation, 250, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 251
    {"conv2d_77", K::Conv2D, 248, -1, -1, -1, 384, 1, 1, 1, 1, P::Same},  // 252
    {"conv2d_81", K::Conv2D, 251, -1, -1, -1, 384, 3, 3, 1, 1, P::Same},  // 253
    {"batch_normalization_77", K::BatchNorm, 252, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 254
    {"batch_normalization_81", K::BatchNorm, 253, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 255
    {"activation_77", K::Activation, 254, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 256
    {"activation_81", K::Activation, 255, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 257
    {"conv2d_78", K::Conv2D, 256, -1, -1, -1, 384, 1, 3, 1, 1, P::Same},  // 258
    {"conv2d_79", K::Conv2D, 256, -1, -1, -1, 384, 3, 1, 1, 1, P::Same},  // 259
    {"conv2d_82", K::Conv2D, 257, -1, -1, -1, 384, 1, 3, 1, 1, P::Same},  // 260
    {"conv2d_83", K::Conv2D, 257, -1, -1, -1, 384, 3, 1, 1, 1, P::Same},  // 261
    {"average_pooling2d_7", K::AvgPool, 248, -1, -1, -1, 0, 3, 3, 1, 1, P::Same},  // 262
    {"conv2d_76", K::Conv2D, 248, -1, -1, -1, 320, 1, 1, 1, 1, P::Same},  // 263
    {"batch_normalization_78", K::BatchNorm, 258, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 264
    {"batch_normalization_79", K::BatchNorm, 259, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 265
    {"batch_normalization_82", K::BatchNorm, 260, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 266
    {"batch_normalization_83", K::BatchNorm, 261, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 267
    {"conv2d_84", K::Conv2D, 262, -1, -1, -1, 192, 1, 1, 1, 1, P::Same},  // 268
    {"batch_normalization_76", K::BatchNorm, 263, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 269
    {"activation_78", K::Activation, 264, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 270
    {"activation_79", K::Activation, 265, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 271
    {"activation_82", K::Activation, 266, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 272
    {"activation_83", K::Activation, 267, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 273
    {"batch_normalization_84", K::BatchNorm, 268, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 274
    {"activation_76", K::Activation, 269, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 275
    {"mixed9_0", K::Concat, 270, 271, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 276
    {"concatenate", K::Concat, 272, 273, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 277
    {"activation_84", K::Activation, 274, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 278
    {"mixed9", K::Concat, 275, 276, 277, 278, 0, 0, 0, 0, 0, P::Same},  // 279
    {"conv2d_89", K::Conv2D, 279, -1, -1, -1, 448, 1, 1, 1, 1, P::Same},  // 280
    {"batch_normalization_89", K::BatchNorm, 280, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 281
    {"activation_89", K::Activation, 281, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 282
    {"conv2d_86", K::Conv2D, 279, -1, -1, -1, 384, 1, 1, 1, 1, P::Same},  // 283
    {"conv2d_90", K::Conv2D, 282, -1, -1, -1, 384, 3, 3, 1, 1, P::Same},  // 284
    {"batch_normalization_86", K::BatchNorm, 283, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 285
    {"batch_normalization_90", K::BatchNorm, 284, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 286
    {"activation_86", K::Activation, 285, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 287
    {"activation_90", K::Activation, 286, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 288
    {"conv2d_87", K::Conv2D, 287, -1, -1, -1, 384, 1, 3, 1, 1, P::Same},  // 289
    {"conv2d_88", K::Conv2D, 287, -1, -1, -1, 384, 3, 1, 1, 1, P::Same},  // 290
    {"conv2d_91", K::Conv2D, 288, -1, -1, -1, 384, 1, 3, 1, 1, P::Same},  // 291
    {"conv2d_92", K::Conv2D, 288, -1, -1, -1, 384, 3, 1, 1, 1, P::Same},  // 292
    {"average_pooling2d_8", K::AvgPool, 279, -1, -1, -1, 0, 3, 3, 1, 1, P::Same},  // 293
    {"conv2d_85", K::Conv2D, 279, -1, -1, -1, 320, 1, 1, 1, 1, P::Same},  // 294
    {"batch_normalization_87", K::BatchNorm, 289, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 295
    {"batch_normalization_88", K::BatchNorm, 290, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 296
    {"batch_normalization_91", K::BatchNorm, 291, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 297
    {"batch_normalization_92", K::BatchNorm, 292, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 298
    {"conv2d_93", K::Conv2D, 293, -1, -1, -1, 192, 1, 1, 1, 1, P::Same},  // 299
    {"batch_normalization_85", K::BatchNorm, 294, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 300
    {"activation_87", K::Activation, 295, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 301
    {"activation_88", K::Activation, 296, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 302
    {"activation_91", K::Activation, 297, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 303
    {"activation_92", K::Activation, 298, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 304
    {"batch_normalization_93", K::BatchNorm, 299, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 305
    {"activation_85", K::Activation, 300, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 306
    {"mixed9_1", K::Concat, 301, 302, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 307
    {"concatenate_1", K::Concat, 303, 304, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 308
    {"activation_93", K::Activation, 305, -1, -1, -1, 0, 0, 0, 0, 0, P::Same},  // 309
    {"mixed10", K::Concat, 306, 307, 308, 309, 0, 0, 0, 0, 0, P::Same},  // 310
};

inline constexpr int kInceptionV3RowCount = static_cast<int>(sizeof(kInceptionV3Rows) / sizeof(kInceptionV3Rows[0]));

}  // namespace detail

inline constexpr int kInceptionV3LayerCount = detail::kInceptionV3RowCount;

}  // namespace statecraft
